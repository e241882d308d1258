#include "qppinv/lte.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <future>
#include <istream>
#include <iterator>
#include <ostream>

#include "qppinv/oracle.hpp"

namespace qppinv::lte {

namespace {

u64 parse_field(std::string_view field, std::size_t line, const char* name) {
  while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.remove_suffix(1);
  u64 value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(std::string("invalid ") + name + " '" + std::string(field) + "'", line);
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

LteEntry parse_row(std::string_view row, std::size_t line) {
  const auto fields = split(row, ',');
  if (fields.size() != 4) throw ParseError("expected 4 comma-separated fields, got " + std::to_string(fields.size()), line);
  LteEntry e;
  e.length = parse_field(fields[0], line, "length");
  e.f1 = parse_field(fields[1], line, "f1");
  e.f2 = parse_field(fields[2], line, "f2");
  if (e.length < 3 || e.length > kMaxModulus) throw ParseError("length out of range", line);
  std::vector<u64> coeffs;
  for (auto c : split(fields[3], ':')) coeffs.push_back(parse_field(c, line, "inverse coefficient"));
  for (u64 c : coeffs) {
    if (c >= e.length) throw ParseError("inverse coefficient not reduced mod N", line);
  }
  e.published_inverse = PolyModN(e.length, std::move(coeffs));
  if (!is_qpp(e.f1, e.f2, Modulus(e.length))) throw ParseError("(f1, f2) is not a QPP over N", line);
  return e;
}

RowReport reproduce_row(const LteEntry& entry, std::size_t cap) {
  RowReport r;
  r.entry = entry;
  r.published_degree = entry.published_inverse.degree();
  const Qpp q = Qpp::make(static_cast<i64>(entry.f1), static_cast<i64>(entry.f2), Modulus(entry.length));
  const InverseSolution sol = invert_qpp(q);
  r.computed_degree = sol.K();
  r.count = sol.count;
  r.particular = sol.particular;
  r.degree_matches = r.computed_degree == r.published_degree;
  r.inverse_verified = oracle::verify_inverse(q.polynomial(), entry.published_inverse, oracle::Sampling::full(), 1);

  if (sol.count <= cap) {
    const auto list = enumerate_inverses(sol, cap);
    if (std::find(list.inverses.begin(), list.inverses.end(), entry.published_inverse) != list.inverses.end()) {
      r.membership = Membership::kEnumerated;
    }
  } else if (is_least_degree_inverse(sol, entry.published_inverse)) {
    r.membership = Membership::kZeroDifference;
  }
  return r;
}

}  // namespace

std::vector<LteEntry> parse_table(std::istream& in) {
  std::vector<LteEntry> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    if (view.empty() || view.front() == '#') continue;
    entries.push_back(parse_row(view, number));
  }
  if (entries.empty()) throw ParseError("fixture contains no rows", number);
  if (entries.size() != kTableRows) {
    throw FixtureError("fixture has " + std::to_string(entries.size()) + " rows, expected " + std::to_string(kTableRows));
  }
  return entries;
}

std::vector<LteEntry> load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture " + path.string());
  return parse_table(in);
}

bool TableReport::all_passed() const noexcept { return passed_count() == rows.size() && !rows.empty(); }

std::size_t TableReport::passed_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const RowReport& r) { return r.passed(); }));
}

TableReport reproduce_table(const std::vector<LteEntry>& entries, std::size_t enumeration_cap) {
  std::vector<std::future<RowReport>> pending;
  pending.reserve(entries.size());
  for (const auto& e : entries) {
    pending.push_back(std::async(std::launch::async, reproduce_row, std::cref(e), enumeration_cap));
  }
  TableReport report;
  report.rows.reserve(entries.size());
  for (auto& f : pending) report.rows.push_back(f.get());
  return report;
}

std::string_view to_string(Membership m) noexcept {
  switch (m) {
    case Membership::kEnumerated:
      return "enumerated";
    case Membership::kZeroDifference:
      return "zero-difference";
    case Membership::kAbsent:
      return "absent";
  }
  return "absent";
}

std::vector<u64> permutation_table(const PolyModN& pi) {
  const u64 n = pi.modulus();
  std::vector<u64> table(n);
  std::vector<bool> seen(n, false);
  for (u64 x = 0; x < n; ++x) {
    const u64 y = eval(pi, x);
    if (seen[y]) throw ContractError(to_string(pi) + " is not a permutation of Z_" + std::to_string(n));
    seen[y] = true;
    table[x] = y;
  }
  return table;
}

std::vector<u64> read_block_text(std::istream& in) {
  std::vector<u64> block;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    if (view.empty()) continue;
    block.push_back(parse_field(view, number, "block value"));
  }
  return block;
}

void write_block_text(std::ostream& out, std::span<const u64> block) {
  for (u64 v : block) out << v << '\n';
}

std::vector<std::uint8_t> read_block_bytes(std::istream& in) {
  std::vector<char> raw{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return {raw.begin(), raw.end()};
}

void write_block_bytes(std::ostream& out, std::span<const std::uint8_t> block) {
  out.write(reinterpret_cast<const char*>(block.data()), static_cast<std::streamsize>(block.size()));
}

}  // namespace qppinv::lte
