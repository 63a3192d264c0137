// Command line front end; speaks to the library through the C interface.
#include <CLI11.hpp>
#include <corrfun/corrfun.h>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kInputError = 2;

struct Options {
  int bound = 3;
  std::uint64_t seed = 0;
  bool json = false;
  std::vector<std::string> lattices;
  std::string algebra;
};

void add_common(CLI::App* cmd, Options& opt, bool with_inputs) {
  cmd->add_option("--bound", opt.bound, "Largest set size (default 3)")
      ->check(CLI::Range(0, 4));
  cmd->add_option("--seed", opt.seed, "Seed for sampled sweeps");
  cmd->add_flag("--json", opt.json, "One JSON object per report");
  if (with_inputs) {
    cmd->add_option("--lattice", opt.lattices,
                    "Lattice: built-in name or file path (repeatable)");
    cmd->add_option("--algebra", opt.algebra,
                    "Algebra: ft:<lattice> or file path");
  }
}

void warn_slow_bound(const Options& opt) {
  if (opt.bound >= 4)
    std::cerr << "warning: bound " << opt.bound
              << " can take a long time\n";
}

[[noreturn]] void input_error() {
  std::cerr << "error: " << corrfun_last_error() << '\n';
  std::exit(kInputError);
}

void check(corrfun_status status) {
  if (status != CORRFUN_OK) input_error();
}

std::string take(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  corrfun_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    std::exit(kInputError);
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

corrfun_lattice* lattice_at(const Options& opt, std::size_t i) {
  if (i >= opt.lattices.size()) {
    std::cerr << "error: this command needs " << (i + 1)
              << " --lattice input(s)\n";
    std::exit(kInputError);
  }
  corrfun_lattice* out = nullptr;
  check(corrfun_lattice_resolve(opt.lattices[i].c_str(), &out));
  return out;
}

corrfun_policy policy_of(const Options& opt) {
  return corrfun_policy{2, 500, opt.seed};
}

void print_dims(const std::uint64_t* dims, int bound) {
  for (int n = 0; n <= bound; ++n) {
    if (n) std::cout << ' ';
    std::cout << dims[n];
  }
  std::cout << '\n';
}

int print_reports(const corrfun_reports* list, bool json) {
  bool all_pass = true;
  for (std::size_t i = 0; i < corrfun_reports_count(list); ++i) {
    const corrfun_report* r = corrfun_reports_at(list, i);
    char* text = nullptr;
    check(json ? corrfun_report_json(r, &text)
               : corrfun_report_line(r, &text));
    std::cout << take(text) << '\n';
    if (corrfun_report_passed(r) == 0) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Workbench for correspondence functors over finite sets: exact "
      "constructions and machine-checked identities"};
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> compose_files;
  std::string lattice_input;
  std::string verify_id;

  CLI::App* compose =
      app.add_subcommand("compose", "Compose two correspondence files");
  compose->add_option("files", compose_files, "after.corr first.corr")
      ->expected(2);

  CLI::App* lattice_check = app.add_subcommand(
      "lattice-check", "Validate a lattice and print its tables");
  lattice_check->add_option("input", lattice_input, "built-in name or file")
      ->required();

  CLI::App* ft_dims = app.add_subcommand(
      "ft-dims", "Dimensions of the function functor of a lattice");
  add_common(ft_dims, opt, true);

  CLI::App* tensor_dims = app.add_subcommand(
      "tensor-dims", "Dimensions of a tensor of two function functors");
  add_common(tensor_dims, opt, true);

  CLI::App* hom_dims = app.add_subcommand(
      "hom-dims", "Dimensions of the internal hom of two function functors");
  add_common(hom_dims, opt, true);

  CLI::App* verify =
      app.add_subcommand("verify", "Run a named verifier suite");
  verify
      ->add_option("id", verify_id,
                   "tau | representable-tensor | induced-tensor | adjunction "
                   "| internal-hom | pairing | foundations | exponential | "
                   "product-union | reconstruction | all")
      ->required();
  add_common(verify, opt, true);

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "Recover a lattice from an algebra functor");
  add_common(reconstruct, opt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (compose->parsed()) {
    corrfun_corr* after = nullptr;
    corrfun_corr* first = nullptr;
    corrfun_corr* result = nullptr;
    check(corrfun_corr_parse(slurp(compose_files[0]).c_str(), &after));
    check(corrfun_corr_parse(slurp(compose_files[1]).c_str(), &first));
    check(corrfun_corr_compose(after, first, &result));
    char* text = nullptr;
    check(corrfun_corr_to_text(result, &text));
    std::cout << take(text);
    corrfun_corr_free(after);
    corrfun_corr_free(first);
    corrfun_corr_free(result);
    return 0;
  }

  if (lattice_check->parsed()) {
    corrfun_lattice* t = nullptr;
    check(corrfun_lattice_resolve(lattice_input.c_str(), &t));
    char* text = nullptr;
    check(corrfun_lattice_to_text(t, &text));
    std::cout << take(text);
    char* tables = nullptr;
    check(corrfun_lattice_tables(t, &tables));
    std::cout << take(tables);
    corrfun_lattice_free(t);
    return 0;
  }

  warn_slow_bound(opt);
  std::vector<std::uint64_t> dims(static_cast<std::size_t>(opt.bound) + 1);

  if (ft_dims->parsed()) {
    corrfun_lattice* t = lattice_at(opt, 0);
    check(corrfun_ft_dims(t, opt.bound, dims.data()));
    print_dims(dims.data(), opt.bound);
    corrfun_lattice_free(t);
    return 0;
  }

  if (tensor_dims->parsed() || hom_dims->parsed()) {
    corrfun_lattice* t = lattice_at(opt, 0);
    corrfun_lattice* tp = lattice_at(opt, 1);
    check(tensor_dims->parsed()
              ? corrfun_tensor_dims(t, tp, opt.bound, dims.data())
              : corrfun_hom_dims(t, tp, opt.bound, dims.data()));
    print_dims(dims.data(), opt.bound);
    corrfun_lattice_free(t);
    corrfun_lattice_free(tp);
    return 0;
  }

  if (verify->parsed()) {
    const corrfun_policy policy = policy_of(opt);
    corrfun_reports* list = nullptr;
    check(corrfun_verify(
        verify_id.c_str(),
        opt.lattices.size() > 0 ? opt.lattices[0].c_str() : nullptr,
        opt.lattices.size() > 1 ? opt.lattices[1].c_str() : nullptr,
        opt.algebra.empty() ? nullptr : opt.algebra.c_str(), opt.bound,
        &policy, &list));
    const int code = print_reports(list, opt.json);
    corrfun_reports_free(list);
    return code;
  }

  if (reconstruct->parsed()) {
    if (opt.algebra.empty()) {
      std::cerr << "error: reconstruct needs --algebra\n";
      return kInputError;
    }
    const corrfun_policy policy = policy_of(opt);
    corrfun_report* report = nullptr;
    char* lattice_text = nullptr;
    check(corrfun_reconstruct(opt.algebra.c_str(), opt.bound, &policy,
                              &report, &lattice_text));
    char* line = nullptr;
    check(opt.json ? corrfun_report_json(report, &line)
                   : corrfun_report_line(report, &line));
    std::cout << take(line) << '\n';
    const int code = corrfun_report_passed(report) == 1 ? 0 : 1;
    if (lattice_text != nullptr) std::cout << take(lattice_text);
    corrfun_report_free(report);
    return code;
  }

  return kInputError;
}
