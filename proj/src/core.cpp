#include "tsg/finvec.hpp"
#include "tsg/rational.hpp"
#include "tsg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace tsg {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite scalar");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, |mant| in [0.5,1)
  Int num = Int(std::llround(std::ldexp(mant, 53)));
  exp -= 53;
  Rational q(num);
  if (exp > 0) {
    q *= Rational(Int(1) << exp);
  } else if (exp < 0) {
    q /= Rational(Int(1) << (-exp));
  }
  return q;
}

namespace {

// decimal digits with optional sign; immune to cpp_int's octal/hex prefixes
Int int_from_decimal(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad integer: '" + text + "'");
  auto nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  Int v(s);
  return negative ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto bad = [&] { return std::invalid_argument("bad rational: '" + text + "'"); };
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num = int_from_decimal(s.substr(0, slash));
    Int den = int_from_decimal(s.substr(slash + 1));
    if (den == 0) throw bad();
    return Rational(num, den);
  }
  auto dot = s.find('.');
  auto epos = s.find_first_of("eE");
  if (dot == std::string::npos && epos == std::string::npos)
    return Rational(int_from_decimal(s));
  // decimal (optionally exponent) notation, converted exactly
  int expo = 0;
  if (epos != std::string::npos) {
    expo = std::stoi(s.substr(epos + 1));
    s = s.substr(0, epos);
  }
  dot = s.find('.');
  std::string digits = s;
  int frac_len = 0;
  if (dot != std::string::npos) {
    frac_len = static_cast<int>(s.size() - dot - 1);
    digits = s.substr(0, dot) + s.substr(dot + 1);
  }
  if (digits.empty() || digits == "-" || digits == "+") throw bad();
  Rational q{int_from_decimal(digits)};
  int shift = expo - frac_len;
  Int ten = 10;
  if (shift > 0) {
    q *= Rational(boost::multiprecision::pow(ten, shift));
  } else if (shift < 0) {
    q /= Rational(boost::multiprecision::pow(ten, -shift));
  }
  return q;
}

std::string to_string(const Rational& q) {
  std::string s = boost::multiprecision::numerator(q).str();
  if (boost::multiprecision::denominator(q) != 1)
    s += "/" + boost::multiprecision::denominator(q).str();
  return s;
}

Rational rational_pow(const Rational& q, unsigned p) {
  Rational r(1);
  for (unsigned i = 0; i < p; ++i) r *= q;
  return r;
}

FinVec FinVec::indicator(Index a, Index b) {
  FinVec f;
  for (Index i = a; i <= b; ++i) f.set(i, Rational(1));
  return f;
}

FinVec FinVec::from_dense(const std::vector<Rational>& values) {
  FinVec f;
  for (std::size_t i = 0; i < values.size(); ++i)
    f.set(static_cast<Index>(i) + 1, values[i]);
  return f;
}

void FinVec::set(Index n, const Rational& value) {
  if (n < 1) throw std::domain_error("FinVec index must be >= 1");
  if (value == 0) {
    entries_.erase(n);
  } else {
    entries_[n] = value;
  }
}

Rational FinVec::get(Index n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<Index> FinVec::support() const {
  std::vector<Index> s;
  s.reserve(entries_.size());
  for (const auto& [i, v] : entries_) s.push_back(i);
  return s;
}

FinVec FinVec::abs() const {
  FinVec f;
  for (const auto& [i, v] : entries_) f.set(i, rabs(v));
  return f;
}

FinVec FinVec::abs_pow(unsigned p) const {
  FinVec f;
  for (const auto& [i, v] : entries_) f.set(i, rational_pow(rabs(v), p));
  return f;
}

FinVec FinVec::scaled(const Rational& c) const {
  FinVec f;
  for (const auto& [i, v] : entries_) f.set(i, c * v);
  return f;
}

FinVec FinVec::plus(const FinVec& other) const {
  FinVec f = *this;
  for (const auto& [i, v] : other.entries_) f.set(i, f.get(i) + v);
  return f;
}

FinVec FinVec::restricted(const std::vector<Index>& indices) const {
  FinVec f;
  for (Index i : indices) {
    auto it = entries_.find(i);
    if (it != entries_.end()) f.set(i, it->second);
  }
  return f;
}

Rational FinVec::l1() const {
  Rational s(0);
  for (const auto& [i, v] : entries_) s += rabs(v);
  return s;
}

Rational FinVec::linf() const {
  Rational m(0);
  for (const auto& [i, v] : entries_) m = std::max(m, rabs(v));
  return m;
}

void BlockVec::set(BlockIndex i, const Rational& value) {
  if (i.block < 1 || i.pos < 1) throw std::domain_error("block index must be >= 1");
  if (value == 0) {
    entries_.erase(i);
  } else {
    entries_[i] = value;
  }
}

Rational BlockVec::get(BlockIndex i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<Index> BlockVec::blocks() const {
  std::vector<Index> out;
  for (const auto& [i, v] : entries_)
    if (out.empty() || out.back() != i.block) out.push_back(i.block);
  return out;
}

FinVec BlockVec::block(Index j) const {
  FinVec f;
  for (auto it = entries_.lower_bound({j, 1}); it != entries_.end() && it->first.block == j; ++it)
    f.set(it->first.pos, it->second);
  return f;
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Rng Rng::split(std::string_view label) const { return Rng(mix64(state_ ^ fnv1a(label))); }

Rng Rng::split(std::uint64_t salt) const { return Rng(mix64(state_ ^ mix64(salt))); }

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::next_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("next_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u64() % span);
}

Rational Rng::next_rational(std::int64_t max_num, std::int64_t max_den) {
  std::int64_t num = 0;
  while (num == 0) num = next_int(-max_num, max_num);
  return Rational(Int(num), Int(next_int(1, max_den)));
}

}  // namespace tsg
