#include "tsg/spaces.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <charconv>

namespace tsg {

namespace {

// Recursive descent over the descriptor grammar. Keywords are matched
// case-insensitively; whitespace is free between tokens.
class Cursor {
 public:
  explicit Cursor(const std::string& text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool try_keyword(const std::string& kw) {
    skip_ws();
    if (pos_ + kw.size() > text_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) !=
          std::tolower(static_cast<unsigned char>(kw[i])))
        return false;
    }
    pos_ += kw.size();
    return true;
  }

  void expect(const std::string& token) {
    if (!try_keyword(token)) fail("expected '" + token + "'");
  }

  double real(const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ == start) fail("expected " + what);
    try {
      return std::stod(text_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("bad number for " + what);
    }
    return 0;
  }

  Index integer(const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected " + what);
    Index out = 0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, out);
    if (ec != std::errc()) fail("bad integer for " + what);
    return out;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  [[noreturn]] void fail(const std::string& message) { throw ParseError(pos_, message); }

  std::size_t pos() const { return pos_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

GrowthFunction parse_dims(Cursor& c) {
  if (c.try_keyword("fgh")) {
    c.expect("(");
    Index n = c.integer("hierarchy level");
    c.expect(")");
    return GrowthFunction::fgh(static_cast<int>(n));
  }
  if (c.try_keyword("id")) return GrowthFunction::identity();
  if (c.try_keyword("const")) {
    c.expect("(");
    Index v = c.integer("constant");
    c.expect(")");
    if (v < 1) c.fail("constant dimension must be >= 1");
    return GrowthFunction::constant(Int(v));
  }
  // explicit comma list
  std::vector<Int> table;
  table.push_back(Int(c.integer("dimension")));
  while (c.try_keyword(",")) {
    // a ')' may follow the list inside dsum(...); peek via integer failure
    table.push_back(Int(c.integer("dimension")));
  }
  for (const Int& v : table)
    if (v < 1) c.fail("dimensions must be >= 1");
  return GrowthFunction::from_table(std::move(table));
}

OrderedPartition parse_sigma(Cursor& c) {
  if (c.try_keyword("geometric")) return OrderedPartition::geometric();
  std::vector<Index> lengths;
  lengths.push_back(c.integer("block length"));
  while (c.try_keyword(",")) lengths.push_back(c.integer("block length"));
  return OrderedPartition::from_lengths(std::move(lengths));
}

Space parse_space_inner(Cursor& c) {
  if (c.try_keyword("tsirelson")) return Space::tsirelson();
  if (c.try_keyword("lpn")) {
    c.expect("(");
    c.expect("p");
    c.expect("=");
    double p = c.real("p");
    if (p <= 0) c.fail("p must be > 0");
    c.expect(",");
    c.expect("n");
    c.expect("=");
    Index n = c.integer("n");
    if (n < 1) c.fail("n must be >= 1");
    c.expect(")");
    return Space::lp_finite(p, n);
  }
  if (c.try_keyword("lp")) {
    c.expect("(");
    c.expect("p");
    c.expect("=");
    double p = c.real("p");
    if (p <= 0) c.fail("p must be > 0");
    c.expect(")");
    return Space::lp(p);
  }
  if (c.try_keyword("convex")) {
    c.expect("(");
    Space inner = parse_space_inner(c);
    c.expect(",");
    c.expect("p");
    c.expect("=");
    double p = c.real("p");
    if (p <= 0) c.fail("p must be > 0");
    c.expect(")");
    return Space::convexify(inner, p);
  }
  if (c.try_keyword("dsum")) {
    c.expect("(");
    c.expect("outer");
    c.expect("=");
    Space outer = parse_space_inner(c);
    c.expect(",");
    c.expect("inner");
    c.expect("=");
    Space inner = parse_space_inner(c);
    c.expect(",");
    c.expect("dims");
    c.expect("=");
    GrowthFunction dims = parse_dims(c);
    c.expect(")");
    return Space::direct_sum(outer, inner, dims);
  }
  if (c.try_keyword("wtrig")) {
    c.expect("(");
    c.expect("lambda");
    c.expect("=");
    double lambda = c.real("lambda");
    if (!(lambda > -1 && lambda < 1)) c.fail("lambda must be in (-1, 1)");
    c.expect(",");
    c.expect("dim");
    c.expect("=");
    Index dim = c.integer("dim");
    if (dim < 1) c.fail("dim must be >= 1");
    c.expect(")");
    return Space::weighted_trig(lambda, dim);
  }
  if (c.try_keyword("rot")) {
    c.expect("(");
    c.expect("a");
    c.expect("=");
    double a = c.real("a");
    if (!(a > 0 && a < 1)) c.fail("a must be in (0, 1)");
    c.expect(",");
    c.expect("dim");
    c.expect("=");
    Index dim = c.integer("dim");
    if (dim < 1) c.fail("dim must be >= 1");
    c.expect(")");
    return Space::rotated_trig_sum(a, dim);
  }
  if (c.try_keyword("dkk")) {
    c.expect("(");
    c.expect("base");
    c.expect("=");
    Space base = parse_space_inner(c);
    c.expect(",");
    c.expect("s");
    c.expect("=");
    Space s = parse_space_inner(c);
    c.expect(",");
    c.expect("sigma");
    c.expect("=");
    OrderedPartition sigma = parse_sigma(c);
    c.expect(")");
    return Space::dkk(base, s, sigma);
  }
  c.fail(
      "expected one of: tsirelson, lp(...), lpn(...), convex(...), dsum(...), wtrig(...), "
      "rot(...), dkk(...)");
}

}  // namespace

Space parse_space(const std::string& text) {
  Cursor c(text);
  Space s = parse_space_inner(c);
  if (!c.at_end()) c.fail("trailing input after descriptor");
  return s;
}

FinVec parse_vector(const std::string& text) {
  std::string trimmed = text;
  auto first = trimmed.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw std::invalid_argument("empty vector literal");
  if (trimmed[first] == '[') {
    auto j = nlohmann::json::parse(trimmed);
    if (!j.is_array()) throw std::invalid_argument("vector literal must be an array");
    FinVec f;
    if (!j.empty() && j[0].is_array()) {
      for (const auto& triple : j) {
        if (!triple.is_array() || triple.size() != 3)
          throw std::invalid_argument("sparse entries are [index, numerator, denominator]");
        Index idx = triple[0].get<Index>();
        Int num(triple[1].get<std::int64_t>());
        Int den(triple[2].get<std::int64_t>());
        if (den == 0) throw std::invalid_argument("zero denominator");
        f.set(idx, Rational(num, den));
      }
      return f;
    }
    Index idx = 1;
    for (const auto& v : j) {
      if (v.is_number_integer()) {
        f.set(idx, Rational(Int(v.get<std::int64_t>())));
      } else {
        f.set(idx, rational_from_double(v.get<double>()));
      }
      ++idx;
    }
    return f;
  }
  // dense CSV row
  FinVec f;
  Index idx = 1;
  std::size_t pos = 0;
  while (pos <= trimmed.size()) {
    auto comma = trimmed.find(',', pos);
    std::string cell = trimmed.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!cell.empty() && cell.find_first_not_of(" \t\n") != std::string::npos)
      f.set(idx, parse_rational(cell));
    ++idx;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return f;
}

}  // namespace tsg
