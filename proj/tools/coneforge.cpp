// coneforge: construct algebras, run exact checks, print reports.
//
// Exit codes: 0 check passed, 1 check ran and failed, 2 invalid input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coneforge/coneforge.hpp"

namespace cf = coneforge;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInvalid = 2;

struct Common {
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool json = false;
};

int emit(const cf::Report& r, bool json) {
  if (json) std::cout << cf::to_json(r).dump(2) << '\n';
  else std::cout << r.to_text();
  return r.pass ? kPass : kFail;
}

cf::SweepOptions sweep_options(const Common& c) {
  cf::SweepOptions s;
  s.seed = c.seed;
  if (c.exhaustive) s.exhaustive = true;
  return s;
}

std::string read_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw cf::DomainError("cannot open " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reattaches the source of a document named triple(<catalog name>) when the tables agree.
void attach_source(cf::Algebra& alg) {
  const std::string& name = alg.name();
  if (alg.source() || name.rfind("triple(", 0) != 0 || name.back() != ')') return;
  try {
    const cf::Algebra inner = cf::construct(name.substr(7, name.size() - 8));
    const cf::Algebra rebuilt = cf::triple(inner);
    if (rebuilt.dim() == alg.dim() && rebuilt.metric() == alg.metric() && rebuilt.entries().size() == alg.entries().size()) {
      bool same = true;
      const auto a = rebuilt.entries();
      const auto b = alg.entries();
      for (std::size_t i = 0; i < a.size() && same; ++i)
        same = a[i].i == b[i].i && a[i].j == b[i].j && a[i].k == b[i].k && a[i].c == b[i].c;
      if (same) alg.set_source(std::make_shared<const cf::Algebra>(inner));
    }
  } catch (const cf::Error&) {
  }
}

std::vector<std::size_t> parse_indices(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw cf::DomainError("bad index '" + item + "' in --zero-block");
    }
    if (pos != item.size() || v < 0) throw cf::DomainError("bad index '" + item + "' in --zero-block");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

int cmd_construct(const std::string& spec, const std::string& cubic, const std::string& name, const std::string& out) {
  cf::Algebra alg = [&] {
    if (spec == "from-cubic") {
      if (cubic.empty()) throw cf::DomainError("construct from-cubic needs --cubic");
      const cf::Polynomial u = cf::Polynomial::parse(read_text(cubic));
      return cf::algebra_from_cubic(u, cf::Matrix::identity(u.nvars()), name.empty() ? "cubic" : name);
    }
    cf::Algebra a = cf::construct(spec);
    if (!name.empty()) a.set_name(name);
    return a;
  }();
  if (out.empty() || out == "-") std::cout << cf::format_document(alg);
  else {
    cf::save_document(alg, out);
    std::cerr << "wrote " << alg.name() << " (dim " << alg.dim() << ", field " << cf::field_tag(alg.field()) << ") to " << out
              << '\n';
  }
  return kPass;
}

int cmd_verify(const std::string& check, const std::string& in, const std::string& zero_block, const std::string& constant,
               const Common& c) {
  const cf::Algebra alg = cf::load_document(in);
  const auto sweep = sweep_options(c);
  if (check == "metrized") return emit(cf::check_metrized(alg), c.json);
  if (check == "hsiang") return emit(cf::hsiang_report(cf::radial_hsiang_check(alg, sweep), true), c.json);
  if (check == "nonradial") return emit(cf::hsiang_report(cf::nonradial_hsiang_check(alg, sweep), false), c.json);
  if (check == "quasicomposition") return emit(cf::quasicomposition_check(alg, c.seed).to_report(), c.json);
  if (check == "killing") return emit(cf::killing_metrized_check(alg), c.json);
  if (check == "eikonal") return emit(cf::eikonal_report(cf::pseudocomposition_check(alg, c.seed)), c.json);
  if (check == "polar") {
    if (zero_block.empty()) throw cf::DomainError("verify polar needs --zero-block <index-list>");
    const auto axes = parse_indices(zero_block);
    return emit(cf::verify_polar(alg, cf::Subspace::coordinate(axes, alg.dim())).to_report(), c.json);
  }
  if (check == "cartan-munzner") {
    const cf::Scalar k = cf::Scalar::parse(constant);
    return emit(cf::cartan_munzner_check(cf::cubic_from_algebra(alg), k), c.json);
  }
  throw cf::DomainError("unknown check '" + check + "'");
}

int cmd_report(const std::string& in, bool peirce, std::size_t restarts, const Common& c) {
  cf::Algebra alg = cf::load_document(in);
  attach_source(alg);
  cf::ReportOptions opt;
  opt.sweep = sweep_options(c);
  opt.peirce = peirce;
  opt.restarts = restarts;
  opt.seed = c.seed;
  const cf::Report r = cf::full_report(alg, opt);
  emit(r, c.json);
  return kPass;
}

struct TriplingRow {
  const char* name;
  long delta;
  long dim;
  long n1;
  long n2;
  long d;
};

struct CartanRow {
  long d;
  long n;
  long n1;
  long n2;
};

int cmd_table(const Common& c) {
  static const TriplingRow rows[] = {
      {"R", 0, 3, 0, 2, 0},      {"C", 0, 6, 1, 2, 0},        {"H", 0, 12, 3, 2, 0},      {"O", 0, 24, 7, 2, 0},
      {"paraC", 0, 6, 1, 2, 0},  {"cross3", 1, 9, 0, 5, 1},   {"cross7", 1, 21, 4, 5, 1}, {"color", 2, 18, 1, 8, 2},
  };
  static const CartanRow cartan[] = {{0, 2, 1, 0}, {1, 5, 2, 0}, {2, 8, 3, 0}, {4, 14, 5, 0}, {8, 26, 9, 0}};
  std::vector<std::string> mismatches;
  cf::Json out = cf::Json::array();
  auto peirce_of = [&](const cf::Algebra& a) -> std::optional<cf::PeirceData> {
    const cf::FloatAlgebra fa(a);
    const auto idem = cf::find_idempotent(fa, 20, c.seed);
    if (idem.empty()) return std::nullopt;
    return cf::peirce(fa, idem.front().c);
  };
  auto show = [](const std::optional<long>& v) { return v ? std::to_string(*v) : std::string("-"); };

  if (!c.json) std::cout << "algebra  dim  delta | triple dim  theta  killing  (n1,n2)  d  delta=d\n";
  for (const auto& row : rows) {
    const cf::Algebra a = cf::construct(row.name);
    const auto qc = cf::quasicomposition_check(a, c.seed);
    const cf::Algebra t = cf::triple(a);
    const auto radial = cf::radial_hsiang_check(t, sweep_options(c));
    const auto killing = cf::killing_metrized_check(t);
    const auto pd = peirce_of(t);
    std::optional<long> n1, n2, d;
    if (pd) {
      n1 = pd->n1;
      n2 = pd->n2;
      d = pd->d;
    }
    const bool cross = qc.delta && d && *qc.delta == *d;
    const bool ok = qc.is_quasicomposition && qc.delta == row.delta && static_cast<long>(t.dim()) == row.dim &&
                    radial.theta == cf::Scalar::rational(4, 3) && killing.pass && n1 == row.n1 && n2 == row.n2 &&
                    d == row.d && cross;
    if (!ok) mismatches.emplace_back(row.name);
    const std::string theta = radial.theta ? radial.theta->to_string() : "-";
    if (c.json) {
      out.push_back(cf::Json{{"algebra", row.name},  {"dim", a.dim()},   {"delta", qc.delta ? cf::Json(*qc.delta) : cf::Json()},
                             {"triple_dim", t.dim()}, {"theta", theta},   {"killing", killing.pass},
                             {"n1", n1 ? cf::Json(*n1) : cf::Json()},     {"n2", n2 ? cf::Json(*n2) : cf::Json()},
                             {"d", d ? cf::Json(*d) : cf::Json()},        {"delta_equals_d", cross},
                             {"match", ok}});
    } else {
      std::cout << row.name << "  " << a.dim() << "  " << show(qc.delta) << " | " << t.dim() << "  " << theta << "  "
                << (killing.pass ? "yes" : "no") << "  (" << show(n1) << "," << show(n2) << ")  " << show(d) << "  "
                << (cross ? "yes" : "no") << (ok ? "" : "  MISMATCH") << '\n';
    }
  }
  if (!c.json) std::cout << "\ncartan(d)  (n, n1, n2)\n";
  for (const auto& row : cartan) {
    const auto cc = cf::cartan_cubic(row.d);
    const auto pd = peirce_of(cc.alg);
    std::optional<long> n1, n2;
    if (pd) {
      n1 = pd->n1;
      n2 = pd->n2;
    }
    const bool ok = static_cast<long>(cc.alg.dim()) == row.n && n1 == row.n1 && n2 == row.n2;
    const std::string label = "cartan(" + std::to_string(row.d) + ")";
    if (!ok) mismatches.push_back(label);
    if (c.json) {
      out.push_back(cf::Json{{"algebra", label}, {"n", cc.alg.dim()}, {"n1", n1 ? cf::Json(*n1) : cf::Json()},
                             {"n2", n2 ? cf::Json(*n2) : cf::Json()}, {"match", ok}});
    } else {
      std::cout << label << "  (" << cc.alg.dim() << ", " << show(n1) << ", " << show(n2) << ")" << (ok ? "" : "  MISMATCH")
                << '\n';
    }
  }
  if (c.json) std::cout << out.dump(2) << '\n';
  if (!mismatches.empty()) {
    std::cerr << "rows not matching the expected values:";
    for (const auto& m : mismatches) std::cerr << ' ' << m;
    std::cerr << '\n';
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact workbench for metrized nonassociative algebras"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for randomized procedures");
    sub->add_flag("--exhaustive", common.exhaustive, "Force exhaustive basis sweeps");
    sub->add_flag("--json", common.json, "Machine-readable output");
  };

  std::string spec, cubic, name, out;
  auto* construct = app.add_subcommand("construct", "Build a catalog algebra, or from-cubic with --cubic");
  construct->add_option("spec", spec, "Catalog name, e.g. triple(cross7), or from-cubic")->required();
  construct->add_option("--cubic", cubic, "Cubic polynomial text, or @file");
  construct->add_option("--name", name, "Name stored in the document");
  construct->add_option("-o,--out", out, "Output path (stdout when omitted)");

  std::string check, in, zero_block, constant = "9";
  auto* verify = app.add_subcommand("verify", "Run one check on an algebra document");
  verify->add_option("check", check, "metrized, hsiang, nonradial, quasicomposition, polar, killing, eikonal, cartan-munzner")
      ->required();
  verify->add_option("input", in, "Algebra document")->required();
  verify->add_option("--zero-block", zero_block, "Comma-separated basis indices spanning A0 (polar)");
  verify->add_option("--constant", constant, "Constant c in |Du|^2 = c|x|^4 (cartan-munzner)");
  add_common(verify);

  bool peirce = false;
  std::size_t restarts = 20;
  std::string report_in;
  auto* report = app.add_subcommand("report", "Run every applicable check");
  report->add_option("input", report_in, "Algebra document")->required();
  report->add_flag("--peirce", peirce, "Search idempotents and compute Peirce data");
  report->add_option("--restarts", restarts, "Idempotent search restarts");
  add_common(report);

  auto* table = app.add_subcommand("table", "Reproduce the Peirce dimension table from the catalog");
  add_common(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    if (*construct) return cmd_construct(spec, cubic, name, out);
    if (*verify) return cmd_verify(check, in, zero_block, constant, common);
    if (*report) return cmd_report(report_in, peirce, restarts, common);
    if (*table) return cmd_table(common);
  } catch (const cf::InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << '\n';
    return kFail;
  } catch (const cf::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
