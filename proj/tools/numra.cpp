#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "numra/numra.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpectrum = 2;
constexpr int kExitIo = 3;
constexpr int kExitAlignment = 4;

int exit_code_for(int err) {
  switch (err) {
    case NUMRA_OK:
      return kExitOk;
    case NUMRA_E_N_NON_POSITIVE:
    case NUMRA_E_R_NOT_ODD:
    case NUMRA_E_R_OUT_OF_RANGE:
    case NUMRA_E_NOT_COPRIME:
      return kExitSpectrum;
    case NUMRA_E_IO:
      return kExitIo;
    case NUMRA_E_STEP_NOT_ALIGNED:
    case NUMRA_E_UNALIGNED_QUERY:
    case NUMRA_E_GRID_MISMATCH:
      return kExitAlignment;
    default:
      return kExitIo;
  }
}

int fail(int err) {
  std::cout << "{\"error\":\"" << numra_error_name(err) << "\",\"message\":\""
            << numra_last_error_message() << "\"}\n";
  return exit_code_for(err);
}

struct Options {
  long N = 2;
  long r = 1;
  std::string bank_path;
  numra_certify_options copts{};
  std::string out;
};

void add_grid_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--bank", o.bank_path, "filter bank JSON file");
  cmd->add_option("--omega", o.copts.omega, "half band width");
  cmd->add_option("--step", o.copts.step, "grid step (must divide 1/(4N))");
  cmd->add_option("--nmax", o.copts.nmax, "periodization window");
  cmd->add_option("--jlo", o.copts.jlo, "lowest level");
  cmd->add_option("--jhi", o.copts.jhi, "highest level");
  cmd->add_option("--lwindow", o.copts.lwindow, "translation window");
  cmd->add_option("--seed", o.copts.seed, "random seed");
  cmd->add_option("--out", o.out, "output file (default stdout)");
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return kExitOk;
  }
  std::ofstream f(out_path);
  f << text << "\n";
  if (!f) {
    std::cerr << "cannot write " << out_path << "\n";
    return kExitIo;
  }
  return kExitOk;
}

int run_validate(const Options& o) {
  numra_spectrum* s = nullptr;
  int err = numra_spectrum_create(o.N, o.r, &s);
  if (err != NUMRA_OK) return fail(err);
  numra_spectrum_destroy(s);
  std::cout << "{\"N\":" << o.N << ",\"r\":" << o.r << ",\"valid\":true}\n";
  return kExitOk;
}

int load_inputs(const Options& o, numra_spectrum** s, numra_bank** b) {
  *s = nullptr;
  *b = nullptr;
  if (!o.bank_path.empty()) {
    int err = numra_bank_load(o.bank_path.c_str(), b);
    if (err != NUMRA_OK) return err;
  }
  int err = numra_spectrum_create(o.N, o.r, s);
  if (err != NUMRA_OK) numra_bank_destroy(*b);
  return err;
}

int run_certify(Options& o) {
  numra_spectrum* s = nullptr;
  numra_bank* b = nullptr;
  int err = load_inputs(o, &s, &b);
  if (err != NUMRA_OK) return fail(err);
  numra_report* rep = nullptr;
  err = numra_certify(s, b, &o.copts, &rep);
  int rc;
  if (err != NUMRA_OK) {
    rc = fail(err);
  } else {
    char* text = nullptr;
    err = numra_report_json(rep, &text);
    if (err != NUMRA_OK) {
      rc = fail(err);
    } else {
      rc = emit(text, o.out);
      numra_string_free(text);
    }
    numra_report_destroy(rep);
  }
  numra_bank_destroy(b);
  numra_spectrum_destroy(s);
  return rc;
}

int run_export(Options& o, const std::string& what) {
  if (o.out.empty()) {
    std::cerr << "export requires --out\n";
    return kExitIo;
  }
  numra_spectrum* s = nullptr;
  numra_bank* b = nullptr;
  int err = load_inputs(o, &s, &b);
  if (err != NUMRA_OK) return fail(err);
  err = numra_export(s, b, &o.copts, what.c_str(), o.out.c_str());
  numra_bank_destroy(b);
  numra_spectrum_destroy(s);
  if (err != NUMRA_OK) return fail(err);
  std::cout << "{\"export\":\"" << what << "\",\"out\":\"" << o.out
            << "\"}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certification tool for nonuniform multiresolution filter "
               "banks"};
  app.require_subcommand(1);

  Options o;
  numra_certify_options_default(&o.copts);

  auto* validate = app.add_subcommand("validate", "check a spectrum (N, r)");
  validate->add_option("--N", o.N, "spectrum parameter N")->required();
  validate->add_option("--r", o.r, "spectrum parameter r")->required();

  auto* certify = app.add_subcommand("certify", "run the full pipeline");
  certify->add_option("--N", o.N, "spectrum parameter N");
  certify->add_option("--r", o.r, "spectrum parameter r");
  add_grid_flags(certify, o);

  std::string what;
  auto* exp = app.add_subcommand("export", "write plot-ready CSV data");
  exp->add_option("what", what,
                  "periodization | scaling | wavelets | coefficients")
      ->required();
  exp->add_option("--N", o.N, "spectrum parameter N");
  exp->add_option("--r", o.r, "spectrum parameter r");
  add_grid_flags(exp, o);

  CLI11_PARSE(app, argc, argv);

  if (validate->parsed()) return run_validate(o);
  if (certify->parsed()) return run_certify(o);
  return run_export(o, what);
}
