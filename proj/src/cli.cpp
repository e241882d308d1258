#include "qppinv/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qppinv/errors.hpp"
#include "qppinv/inversion.hpp"
#include "qppinv/lte.hpp"
#include "qppinv/oracle.hpp"

#ifndef QPPINV_DEFAULT_FIXTURE
#define QPPINV_DEFAULT_FIXTURE "data/lte_inverses.csv"
#endif

namespace qppinv::cli {

namespace {

using nlohmann::ordered_json;

// Above this size `verify` defaults to sampling.
constexpr u64 kFullVerifyDefaultCeiling = u64{1} << 25;

struct Options {
  u64 n = 0;
  u64 f1 = 0;
  u64 f2 = 0;
  bool json = false;
  std::size_t limit = kDefaultEnumerationLimit;
  std::string mode;
  std::size_t samples = 100000;
  u64 seed = 0x5eed;
  std::string inverse;
  std::string input;
  std::string poly;
  std::string direction = "interleave";
  std::string format = "text";
  std::string fixture;
  unsigned workers = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Modulus checked_modulus(u64 n) {
  if (n < 3 || n > kMaxModulus) throw UsageError("--n must satisfy 3 <= n <= 2^50");
  return Modulus(n);
}

ordered_json to_json(const std::vector<u64>& v) { return ordered_json(v); }

ordered_json to_json(const PolyModN& p) {
  return ordered_json(std::vector<u64>(p.coeffs().begin(), p.coeffs().end()));
}

ordered_json to_json(const ResidueMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

void print_vector(std::ostream& out, const std::vector<u64>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << '\n';
}

std::string qpp_text(u64 f1, u64 f2, u64 n) { return to_string(PolyModN(n, {f1, f2})) + " mod " + std::to_string(n); }

int report_invalid(const Options& o, QppClause clause, std::ostream& out) {
  if (o.json) {
    ordered_json j;
    j["n"] = o.n;
    j["f1"] = o.f1;
    j["f2"] = o.f2;
    j["valid"] = false;
    j["violated_clause"] = std::string(describe(clause));
    out << j.dump(2) << '\n';
  } else {
    out << "not a QPP: " << describe(clause) << '\n';
  }
  return kExitDomainFailure;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Modulus n = checked_modulus(o.n);
  if (auto clause = qpp_violation(o.f1, o.f2, n)) return report_invalid(o, *clause, out);
  if (o.json) {
    ordered_json j;
    j["n"] = o.n;
    j["f1"] = o.f1 % o.n;
    j["f2"] = o.f2 % o.n;
    j["valid"] = true;
    out << j.dump(2) << '\n';
  } else {
    out << qpp_text(o.f1, o.f2, o.n) << " is a QPP\n";
  }
  return kExitOk;
}

int cmd_invert(const Options& o, std::ostream& out) {
  const Modulus n = checked_modulus(o.n);
  if (auto clause = qpp_violation(o.f1, o.f2, n)) return report_invalid(o, *clause, out);
  const InverseSolution sol = invert_qpp(Qpp::make(static_cast<i64>(o.f1), static_cast<i64>(o.f2), n));
  const TriangularSystem& sys = sol.system;
  // Least representative of each diagonal congruence, back-substituted.
  const std::vector<u64> least_h = all_h(sys, 1).solutions.front();
  const PolyModN least_h_inverse = back_substitute(sys.u, least_h, sys.qpp.n());

  if (o.json) {
    ordered_json j;
    j["n"] = o.n;
    j["f1"] = sol.input.f1;
    j["f2"] = sol.input.f2;
    j["valid"] = true;
    j["normalized"] = {{"changed", sol.normalization_changed()}, {"f1", sol.qpp.f1}, {"f2", sol.qpp.f2}};
    j["degree_bound"] = degree_bound(n);
    j["K"] = sol.K();
    j["D"] = to_json(sys.d);
    j["U"] = to_json(sys.u);
    j["e"] = to_json(sys.e);
    j["h"] = to_json(sol.h);
    j["particular"] = to_json(sol.particular);
    j["particular_text"] = to_string(sol.particular);
    j["least_h"] = to_json(least_h);
    j["least_h_inverse"] = to_json(least_h_inverse);
    j["count"] = sol.count.str();
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "QPP: " << qpp_text(sol.input.f1, sol.input.f2, o.n) << '\n';
  if (sol.normalization_changed()) {
    out << "normalized: inverting the equivalent QPP " << qpp_text(sol.qpp.f1, sol.qpp.f2, o.n) << '\n';
  }
  out << "degree bound: " << degree_bound(n) << '\n';
  out << "least degree K: " << sol.K() << '\n';
  out << "D diagonal: ";
  print_vector(out, sys.d);
  out << "U:\n";
  for (std::size_t i = 0; i < sys.u.rows(); ++i) {
    out << "  ";
    print_vector(out, sys.u.row(i));
  }
  out << "e: ";
  print_vector(out, sys.e);
  out << "h: ";
  print_vector(out, sol.h);
  out << "particular inverse: " << to_string(sol.particular) << '\n';
  out << "least h: ";
  print_vector(out, least_h);
  out << "inverse from least h: " << to_string(least_h_inverse) << '\n';
  out << "inverse count: " << sol.count.str() << '\n';
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  const Modulus n = checked_modulus(o.n);
  if (o.limit == 0) throw UsageError("--limit must be at least 1");
  if (auto clause = qpp_violation(o.f1, o.f2, n)) return report_invalid(o, *clause, out);
  const InverseSolution sol = invert_qpp(Qpp::make(static_cast<i64>(o.f1), static_cast<i64>(o.f2), n));
  const InverseList list = enumerate_inverses(sol, o.limit);

  if (o.json) {
    ordered_json j;
    j["n"] = o.n;
    j["f1"] = sol.input.f1;
    j["f2"] = sol.input.f2;
    j["K"] = sol.K();
    j["count"] = sol.count.str();
    j["truncated"] = list.truncated;
    ordered_json inverses = ordered_json::array();
    for (const auto& g : list.inverses) inverses.push_back(to_json(g));
    j["inverses"] = std::move(inverses);
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "least degree K: " << sol.K() << '\n';
  out << "inverse count: " << sol.count.str() << '\n';
  for (const auto& g : list.inverses) out << to_string(g) << '\n';
  if (list.truncated) out << "... truncated after " << list.inverses.size() << " inverses\n";
  return kExitOk;
}

std::vector<u64> json_coefficients(const nlohmann::json& value) {
  std::vector<u64> out;
  for (const auto& c : value) out.push_back(c.get<u64>());
  return out;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
  u64 nv = o.n, f1 = o.f1, f2 = o.f2;
  std::optional<PolyModN> g;

  if (!o.input.empty()) {
    nlohmann::json doc;
    try {
      if (o.input == "-") {
        doc = nlohmann::json::parse(in);
      } else {
        std::ifstream file(o.input);
        if (!file) throw UsageError("cannot open " + o.input);
        doc = nlohmann::json::parse(file);
      }
      if (!doc.value("valid", true)) {
        out << "input describes an invalid QPP\n";
        return kExitDomainFailure;
      }
      nv = doc.at("n").get<u64>();
      f1 = doc.at("f1").get<u64>();
      f2 = doc.at("f2").get<u64>();
      checked_modulus(nv);
      g = PolyModN(nv, json_coefficients(doc.at("particular")));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed JSON input: ") + e.what());
    }
  } else {
    if (o.inverse.empty()) throw UsageError("verify needs --inverse or --input");
    checked_modulus(nv);
    g = parse_polynomial(o.inverse, nv);
  }

  const PolyModN f(nv, {f1, f2});
  oracle::Sampling sampling;
  std::string mode = o.mode;
  if (mode.empty()) mode = nv <= kFullVerifyDefaultCeiling ? "full" : "sample";
  if (mode == "sample") sampling = oracle::Sampling::sample(o.samples, o.seed);
  const bool ok = oracle::verify_inverse(f, *g, sampling, o.workers);

  if (o.json) {
    ordered_json j;
    j["n"] = nv;
    j["f1"] = f1 % nv;
    j["f2"] = f2 % nv;
    j["inverse"] = to_json(*g);
    j["mode"] = mode;
    if (mode == "sample") j["samples"] = o.samples;
    j["verified"] = ok;
    out << j.dump(2) << '\n';
  } else {
    out << (ok ? "verified" : "FAILED") << ": g(f(x)) == x " << (mode == "full" ? "on all " + std::to_string(nv) + " points" : "on " + std::to_string(o.samples) + " sampled points") << '\n';
  }
  return ok ? kExitOk : kExitDomainFailure;
}

int cmd_permute(const Options& o, std::istream& in, std::ostream& out) {
  checked_modulus(o.n);
  PolyModN pi = PolyModN::zero(o.n);
  if (!o.poly.empty()) {
    pi = parse_polynomial(o.poly, o.n);
  } else {
    if (auto clause = qpp_violation(o.f1, o.f2, Modulus(o.n))) {
      throw UsageError("not a QPP: " + std::string(describe(*clause)));
    }
    pi = PolyModN(o.n, {o.f1, o.f2});
  }
  const auto direction = o.direction == "deinterleave" ? lte::Direction::kDeinterleave : lte::Direction::kInterleave;

  std::ifstream file;
  std::istream* src = &in;
  if (!o.input.empty() && o.input != "-") {
    file.open(o.input, std::ios::binary);
    if (!file) throw UsageError("cannot open " + o.input);
    src = &file;
  }
  if (o.format == "bytes") {
    const auto block = lte::read_block_bytes(*src);
    const auto result = lte::permute_block<std::uint8_t>(pi, block, direction);
    lte::write_block_bytes(out, result);
  } else {
    const auto block = lte::read_block_text(*src);
    const auto result = lte::permute_block<u64>(pi, block, direction);
    lte::write_block_text(out, result);
  }
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out) {
  std::string path = o.fixture;
  if (path.empty()) {
    const char* env = std::getenv(kFixtureEnv);
    path = env != nullptr && *env != '\0' ? env : QPPINV_DEFAULT_FIXTURE;
  }
  const auto entries = lte::load_table(path);
  const lte::TableReport report = lte::reproduce_table(entries, o.limit);

  if (o.json) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
      ordered_json row;
      row["n"] = r.entry.length;
      row["f1"] = r.entry.f1;
      row["f2"] = r.entry.f2;
      row["published"] = to_json(r.entry.published_inverse);
      row["published_degree"] = r.published_degree;
      row["K"] = r.computed_degree;
      row["count"] = r.count.str();
      row["verified"] = r.inverse_verified;
      row["membership"] = std::string(lte::to_string(r.membership));
      row["particular"] = to_json(r.particular);
      row["passed"] = r.passed();
      rows.push_back(std::move(row));
    }
    ordered_json j;
    j["rows"] = std::move(rows);
    j["passed"] = report.passed_count();
    j["total"] = report.rows.size();
    out << j.dump(2) << '\n';
  } else {
    for (const auto& r : report.rows) {
      out << (r.passed() ? "PASS " : "FAIL ") << r.entry.length << "  " << qpp_text(r.entry.f1, r.entry.f2, r.entry.length)
          << "  K=" << r.computed_degree << " (published " << r.published_degree << ")  count=" << r.count.str()
          << "  membership=" << lte::to_string(r.membership) << "  verified=" << (r.inverse_verified ? "yes" : "no")
          << '\n';
    }
    out << report.passed_count() << "/" << report.rows.size() << " rows passed\n";
  }
  return report.all_passed() ? kExitOk : kExitDomainFailure;
}

int cmd_bound(const Options& o, std::ostream& out) {
  const Modulus n = checked_modulus(o.n);
  if (o.json) {
    ordered_json j;
    j["n"] = o.n;
    ordered_json factors = ordered_json::array();
    for (const auto& f : n.factors()) factors.push_back({{"p", f.prime}, {"exponent", f.exponent}});
    j["factors"] = std::move(factors);
    j["degree_bound"] = degree_bound(n);
    out << j.dump(2) << '\n';
  } else {
    out << degree_bound(n) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inverse permutation polynomials for quadratic (QPP) interleavers over Z_N", "qppinv"};
  app.require_subcommand(1);
  Options o;

  auto add_qpp = [&o](CLI::App* sub, bool coefficients_required) {
    sub->add_option("--n", o.n, "Ring size N (3 <= N <= 2^50)")->required();
    auto* f1 = sub->add_option("--f1", o.f1, "Linear coefficient");
    auto* f2 = sub->add_option("--f2", o.f2, "Quadratic coefficient");
    if (coefficients_required) {
      f1->required();
      f2->required();
    }
  };
  auto add_json = [&o](CLI::App* sub) { sub->add_flag("--json", o.json, "Machine-readable output"); };

  auto* validate = app.add_subcommand("validate", "Check whether f1*x + f2*x^2 permutes Z_N");
  add_qpp(validate, true);
  add_json(validate);

  auto* invert = app.add_subcommand("invert", "Least-degree inverse of a QPP");
  add_qpp(invert, true);
  add_json(invert);

  auto* enumerate = app.add_subcommand("enumerate", "List all least-degree inverses");
  add_qpp(enumerate, true);
  add_json(enumerate);
  enumerate->add_option("--limit", o.limit, "Stop after this many inverses")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check g(f(x)) == x");
  verify->add_option("--n", o.n, "Ring size N");
  verify->add_option("--f1", o.f1, "Linear coefficient");
  verify->add_option("--f2", o.f2, "Quadratic coefficient");
  verify->add_option("--inverse,-g", o.inverse, "Inverse polynomial, e.g. \"31*x + 290*x^2 + 232*x^3\"");
  verify->add_option("--input", o.input, "JSON emitted by `invert --json` ('-' for stdin)");
  verify->add_option("--mode", o.mode, "full or sample (default: full up to N = 2^25)")
      ->check(CLI::IsMember({"full", "sample"}));
  verify->add_option("--samples", o.samples, "Points checked in sample mode")->capture_default_str();
  verify->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  verify->add_option("--workers", o.workers, "Threads for full mode (0 = all cores)");
  add_json(verify);

  auto* permute = app.add_subcommand("permute", "Interleave or deinterleave a block of N items");
  add_qpp(permute, false);
  permute->add_option("--poly", o.poly, "Permutation polynomial instead of --f1/--f2");
  permute->add_option("--direction", o.direction, "interleave or deinterleave")
      ->check(CLI::IsMember({"interleave", "deinterleave"}))
      ->capture_default_str();
  permute->add_option("--format", o.format, "text (one integer per line) or bytes")
      ->check(CLI::IsMember({"text", "bytes"}))
      ->capture_default_str();
  permute->add_option("--input", o.input, "Block file (default: stdin)");

  auto* table = app.add_subcommand("table", "Reproduce the LTE least-degree inverse table");
  table->add_option("--fixture", o.fixture, std::string("Fixture CSV (default: $") + kFixtureEnv + " or bundled copy)");
  table->add_option("--cap", o.limit, "Enumeration cap for membership checks")->capture_default_str();
  add_json(table);

  auto* bound = app.add_subcommand("bound", "Upper bound max_p n_{N,p} on the inverse degree");
  bound->add_option("--n", o.n, "Ring size N")->required();
  add_json(bound);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (invert->parsed()) return cmd_invert(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (verify->parsed()) return cmd_verify(o, in, out);
    if (permute->parsed()) return cmd_permute(o, in, out);
    if (table->parsed()) return cmd_table(o, out);
    if (bound->parsed()) return cmd_bound(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.line() == 0 ? kExitUsage : kExitDomainFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainFailure;
  }
  return kExitUsage;
}

}  // namespace qppinv::cli
