#include "subscan/polytext.hpp"

#include <cctype>
#include <map>
#include <optional>

#include "subscan/errors.hpp"

namespace subscan {

namespace {

std::string strip_comments(std::string_view text) {
  std::string out;
  bool comment = false;
  for (char ch : text) {
    if (ch == '#') comment = true;
    if (ch == '\n') comment = false;
    out.push_back(comment ? ' ' : ch);
  }
  return out;
}

bool is_coefficient_list(const std::string& s) {
  bool any = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '/') {
      any = true;
      continue;
    }
    if (ch == '-' || ch == '+') {
      // a sign must start a token
      if (i + 1 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1]))) return false;
      if (i > 0 && !std::isspace(static_cast<unsigned char>(s[i - 1]))) return false;
      continue;
    }
    return false;
  }
  return any;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  PolyQ parse() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError("empty polynomial", pos_);
    std::map<unsigned long, Rat> terms;
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        throw SyntaxError("expected '+' or '-'", pos_);
      }
      auto [coef, exp] = term();
      terms[exp] += sign * coef;
      first = false;
    }
    std::vector<Rat> c;
    for (const auto& [e, v] : terms) {
      if (e > (1ul << 20)) throw SyntaxError("exponent too large", pos_);
      if (c.size() <= e) c.resize(e + 1, Rat(0));
      c[e] += v;
    }
    return PolyQ(std::move(c));
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Int integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw SyntaxError("expected a number", start);
    return Int(s_.substr(start, pos_ - start));
  }

  Rat number() {
    Int num = integer();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      Int den = integer();
      if (den == 0) throw SyntaxError("zero denominator", at);
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  bool at_variable() const { return pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])); }

  unsigned long variable_power() {
    char v = s_[pos_];
    if (v != 'x' && v != 'X') throw MultipleVariables(std::string("unsupported variable '") + v + "' at position " + std::to_string(pos_));
    if (var_ && *var_ != v) throw MultipleVariables("mixed variables x and X at position " + std::to_string(pos_));
    var_ = v;
    ++pos_;
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_])))
      throw MultipleVariables("multi-letter variable at position " + std::to_string(pos_));
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      std::size_t at = pos_;
      Int e = integer();
      if (!e.fits_ulong_p()) throw SyntaxError("exponent too large", at);
      return e.get_ui();
    }
    return 1;
  }

  std::pair<Rat, unsigned long> term() {
    if (pos_ >= s_.size()) throw SyntaxError("expected a term", pos_);
    if (at_variable()) return {Rat(1), variable_power()};
    Rat coef = number();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '*') {
      ++pos_;
      skip();
      if (!at_variable()) throw SyntaxError("expected variable after '*'", pos_);
      return {coef, variable_power()};
    }
    if (at_variable()) return {coef, variable_power()};
    return {coef, 0};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::optional<char> var_;
};

}  // namespace

PolyQ parse_poly(std::string_view text) {
  std::string s = strip_comments(text);
  if (is_coefficient_list(s)) {
    // descending coefficients, each an integer or a/b
    std::vector<Rat> desc;
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      if (i >= s.size()) break;
      std::size_t start = i;
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
      std::string tok = s.substr(start, i - start);
      if (tok.front() == '+') tok.erase(0, 1);
      Rat r;
      if (r.set_str(tok, 10) != 0 || tok.find('/') == 0 || tok.back() == '/') throw SyntaxError("bad coefficient", start);
      if (r.get_den() == 0) throw SyntaxError("zero denominator", start);
      r.canonicalize();
      desc.push_back(r);
    }
    return PolyQ(std::vector<Rat>(desc.rbegin(), desc.rend()));
  }
  return Parser(s).parse();
}

std::string render(const PolyQ& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const Rat& c = p[i];
    if (c == 0) continue;
    Rat a = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string mono;
    if (i >= 1) mono = std::string(1, var);
    if (i >= 2) mono += "^" + std::to_string(i);
    if (i == 0)
      out += a.get_str();
    else if (a == 1)
      out += mono;
    else
      out += a.get_str() + "*" + mono;
  }
  return out;
}

std::string render(const PolyZ& p, char var) { return render(to_q(p), var); }

}  // namespace subscan
