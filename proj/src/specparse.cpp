#include "specparse.hpp"

#include <cctype>
#include <cstdlib>
#include <map>

#include "errors.hpp"

namespace pqhyp {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    if (peek() != c)
      fail_parse("expected '" + std::string(1, c) + "' at position " + std::to_string(pos) +
                 " in \"" + text + "\"");
    ++pos;
  }
  [[noreturn]] void error(const std::string& what) {
    fail_parse(what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
  }
  double number() {
    skip_ws();
    const char* start = text.c_str() + pos;
    char* end = nullptr;
    double v = std::strtod(start, &end);
    if (end == start) error("expected a number");
    pos += static_cast<size_t>(end - start);
    return v;
  }
  int integer() {
    double v = number();
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) error("expected an integer");
    return i;
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (pos == start) error("expected an identifier");
    return text.substr(start, pos - start);
  }
};

ScalarFn parse_fn_at(Cursor& c) {
  std::string name = c.ident();
  if (name == "exp") return make_exp();
  if (name == "power") {
    c.expect('(');
    double p = c.number();
    c.expect(')');
    return make_power(p);
  }
  if (name == "plog") {
    c.expect('(');
    double p = c.number();
    c.expect(')');
    return make_plog(p);
  }
  if (name == "linear") {
    c.expect('(');
    double a = c.number();
    c.expect(',');
    double b = c.number();
    c.expect(')');
    return make_linear(a, b);
  }
  if (name == "linlog") {
    c.expect('(');
    double a = c.number();
    c.expect(')');
    return make_linlog(a);
  }
  if (name == "hariya") {
    c.expect('(');
    ScalarFn base = parse_fn_at(c);
    c.expect(',');
    double r = c.number();
    c.expect(')');
    return make_hariya_companion(base, r);
  }
  c.error("unknown function '" + name + "'");
}

bool is_gen_spec(const std::string& s) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.compare(i, 4, "gen(") == 0 || s.compare(i, 4, "gen ") == 0;
}

FnPair parse_gen(const std::string& spec) {
  Cursor c{spec};
  if (c.ident() != "gen") c.error("expected gen(...)");
  c.expect('(');
  ScalarFn h, phi;
  for (int field = 0; field < 2; ++field) {
    std::string key = c.ident();
    c.expect('=');
    if (key == "h")
      h = parse_fn_at(c);
    else if (key == "phi")
      phi = parse_fn_at(c);
    else
      c.error("unknown generator field '" + key + "'");
    if (field == 0) c.expect(',');
  }
  c.expect(')');
  if (!c.done()) c.error("trailing input");
  if (!h.valid() || !phi.valid()) c.error("generator needs both h and phi");
  return make_generator(h, phi);
}

}  // namespace

ScalarFn parse_fn(const std::string& spec) {
  Cursor c{spec};
  ScalarFn fn = parse_fn_at(c);
  if (!c.done()) c.error("trailing input");
  return fn;
}

FnPair parse_pair(const std::string& p_spec, const std::string& q_spec) {
  if (is_gen_spec(p_spec)) {
    if (!q_spec.empty()) fail_parse("gen(...) defines both P and Q; leave Q empty");
    return parse_gen(p_spec);
  }
  if (is_gen_spec(q_spec)) fail_parse("gen(...) must be given as P");
  ScalarFn P = parse_fn(p_spec);
  ScalarFn Q = q_spec.empty() ? P : parse_fn(q_spec);
  return make_pair(P, Q);
}

namespace {

struct Term {
  Complex coeff{1.0, 0.0};
  bool has_hermite = false;
  MultiIndex hermite;            // literal index list from H{...}
  std::map<int, int> mono_exps;  // 1-based variable -> exponent
};

}  // namespace

CPoly parse_poly(const std::string& text, BasisHint hint) {
  Cursor c{text};
  std::vector<Term> terms;
  bool any_hermite = false, any_mono = false;
  int dim = 1;

  bool first = true;
  while (!c.done()) {
    double sign = 1.0;
    char ch = c.peek();
    if (ch == '+' || ch == '-') {
      ++c.pos;
      sign = ch == '-' ? -1.0 : 1.0;
    } else if (!first) {
      c.error("expected '+' or '-' between terms");
    }
    first = false;

    Term term;
    bool saw_factor = false;
    for (;;) {
      char p = c.peek();
      if (p == '\0' || p == '+' || p == '-') break;
      if (p == '*') {
        ++c.pos;
        continue;
      }
      if (p == '(') {
        ++c.pos;
        double re = c.number();
        c.expect(',');
        double im = c.number();
        c.expect(')');
        term.coeff *= Complex(re, im);
        saw_factor = true;
      } else if (std::isdigit(static_cast<unsigned char>(p)) || p == '.') {
        term.coeff *= c.number();
        saw_factor = true;
      } else if (p == 'H') {
        if (term.has_hermite) c.error("at most one Hermite atom per term");
        if (!term.mono_exps.empty()) c.error("cannot mix H and x atoms in one term");
        ++c.pos;
        term.has_hermite = true;
        if (c.peek() == '{') {
          ++c.pos;
          term.hermite.push_back(c.integer());
          while (c.peek() == ',') {
            ++c.pos;
            term.hermite.push_back(c.integer());
          }
          c.expect('}');
        } else {
          term.hermite.push_back(c.integer());
        }
        for (int e : term.hermite)
          if (e < 0) c.error("negative Hermite index");
        any_hermite = true;
        dim = std::max(dim, static_cast<int>(term.hermite.size()));
        saw_factor = true;
      } else if (p == 'x') {
        if (term.has_hermite) c.error("cannot mix H and x atoms in one term");
        ++c.pos;
        int var = 1;
        if (c.pos < text.size() && std::isdigit(static_cast<unsigned char>(text[c.pos])))
          var = c.integer();
        if (var < 1 || var > CPoly::kMaxDim) c.error("variable index out of range");
        int exp = 1;
        if (c.peek() == '^') {
          ++c.pos;
          exp = c.integer();
          if (exp < 0) c.error("negative exponent");
        }
        term.mono_exps[var] += exp;
        any_mono = true;
        dim = std::max(dim, var);
        saw_factor = true;
      } else {
        c.error("unexpected character");
      }
    }
    if (!saw_factor) c.error("empty term");
    term.coeff *= sign;
    terms.push_back(std::move(term));
  }
  if (terms.empty()) fail_parse("empty polynomial");
  if (any_hermite && any_mono) fail_parse("polynomial mixes Hermite and monomial atoms");

  Basis basis;
  if (any_hermite)
    basis = Basis::Hermite;
  else if (any_mono)
    basis = Basis::Monomial;
  else
    basis = hint == BasisHint::Monomial ? Basis::Monomial : Basis::Hermite;
  if (hint == BasisHint::Monomial && any_hermite) fail_parse("monomial basis requested but H atoms present");
  if (hint == BasisHint::Hermite && any_mono) fail_parse("Hermite basis requested but x atoms present");

  CPoly poly(dim, basis);
  for (const Term& term : terms) {
    MultiIndex idx(dim, 0);
    if (term.has_hermite)
      for (size_t i = 0; i < term.hermite.size(); ++i) idx[i] = term.hermite[i];
    for (const auto& [var, exp] : term.mono_exps) idx[var - 1] = exp;
    poly.add(idx, term.coeff);
  }
  return poly;
}

}  // namespace pqhyp
