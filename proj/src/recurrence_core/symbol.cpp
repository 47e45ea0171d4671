#include "recurrence_core/symbol.h"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "recurrence_core/pattern.h"

namespace recur {
namespace {

void sort_factors(std::vector<Token>& factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Token& x, const Token& y) { return x.top() > y.top(); });
}

std::string token_text(const Token& t) {
  std::ostringstream os;
  if (t.kind == Token::Kind::A)
    os << "a(" << t.index << ")";
  else
    os << "b(" << t.index + 1 << "," << t.index << ")";
  return os.str();
}

}  // namespace

std::string SymbolMonomial::key() const {
  std::string k;
  for (const Token& t : factors) {
    if (!k.empty()) k += '*';
    k += token_text(t);
  }
  return k;
}

bool SymbolMonomial::covers_all_positions() const {
  std::vector<int> covered;
  for (const Token& t : factors) {
    covered.push_back(t.index);
    if (t.kind == Token::Kind::B) covered.push_back(t.index + 1);
  }
  std::sort(covered.begin(), covered.end());
  if (static_cast<int>(covered.size()) != n) return false;
  for (int i = 0; i < n; ++i)
    if (covered[static_cast<std::size_t>(i)] != i + 1) return false;
  return true;
}

void SymbolPolynomial::normalize() {
  std::map<std::string, SymbolMonomial> merged;
  for (SymbolMonomial& m : monomials) {
    sort_factors(m.factors);
    const std::string k = m.key();
    auto it = merged.find(k);
    if (it == merged.end())
      merged.emplace(k, std::move(m));
    else
      it->second.coeff += m.coeff;
  }
  monomials.clear();
  for (auto& [k, m] : merged)
    if (m.coeff != 0) monomials.push_back(std::move(m));
}

SymbolPolynomial add(const SymbolPolynomial& p, const SymbolPolynomial& q) {
  if (p.n != q.n) throw std::invalid_argument("add: mismatched lengths");
  SymbolPolynomial out = p;
  out.monomials.insert(out.monomials.end(), q.monomials.begin(),
                       q.monomials.end());
  out.normalize();
  return out;
}

SymbolPolynomial delta_apply(int i, const SymbolPolynomial& p) {
  if (i < 1 || i > p.n - 1)
    throw std::out_of_range("delta_apply: index must satisfy 1 <= i <= n-1");
  SymbolPolynomial out;
  out.n = p.n;
  for (const SymbolMonomial& m : p.monomials) {
    const auto find_a = [&m](int idx) {
      return std::find(m.factors.begin(), m.factors.end(),
                       Token{Token::Kind::A, idx});
    };
    const auto hi = find_a(i + 1);
    const auto lo = find_a(i);
    if (hi == m.factors.end() || lo == m.factors.end()) continue;
    SymbolMonomial r;
    r.n = m.n;
    r.coeff = m.coeff;
    for (const Token& t : m.factors)
      if (!(t == *hi) && !(t == *lo)) r.factors.push_back(t);
    r.factors.push_back(Token{Token::Kind::B, i});
    out.monomials.push_back(std::move(r));
  }
  out.normalize();
  return out;
}

SymbolPolynomial a_string(int n) {
  if (n < 1) throw std::invalid_argument("a_string: n must be >= 1");
  SymbolMonomial m;
  m.n = n;
  m.coeff = 1;
  for (int i = n; i >= 1; --i) m.factors.push_back(Token{Token::Kind::A, i});
  SymbolPolynomial p;
  p.n = n;
  p.monomials.push_back(std::move(m));
  return p;
}

SymbolPolynomial expand_closed_form(int n) {
  if (n < 1) throw std::invalid_argument("expand_closed_form: n must be >= 1");
  SymbolPolynomial out;
  out.n = n;
  for (int ell = 0; ell <= n / 2; ++ell) {
    for (const ContractionPattern& pat :
         enumerate_patterns(n, ell, PatternConvention::Lower)) {
      SymbolMonomial m;
      m.n = n;
      m.coeff = 1;
      // Positions in the pattern pair up as b-factors, the rest stay a's.
      std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
      for (int i : pat.indices) {
        m.factors.push_back(Token{Token::Kind::B, i});
        used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(i) + 1] = true;
      }
      for (int i = 1; i <= n; ++i)
        if (!used[static_cast<std::size_t>(i)])
          m.factors.push_back(Token{Token::Kind::A, i});
      out.monomials.push_back(std::move(m));
    }
  }
  out.normalize();
  return out;
}

std::string to_text(const SymbolPolynomial& p) {
  std::ostringstream os;
  for (const SymbolMonomial& m : p.monomials)
    os << m.coeff << ' ' << m.key() << '\n';
  return os.str();
}

SymbolPolynomial from_text(int n, const std::string& text) {
  SymbolPolynomial out;
  out.n = n;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SymbolMonomial m;
    m.n = n;
    std::string factors;
    if (!(ls >> m.coeff >> factors))
      throw std::invalid_argument("from_text: malformed line: " + line);
    std::size_t pos = 0;
    while (pos < factors.size()) {
      const std::size_t star = factors.find('*', pos);
      const std::string tok = factors.substr(pos, star == std::string::npos
                                                      ? std::string::npos
                                                      : star - pos);
      int hi = 0, lo = 0;
      if (std::sscanf(tok.c_str(), "a(%d)", &lo) == 1)
        m.factors.push_back(Token{Token::Kind::A, lo});
      else if (std::sscanf(tok.c_str(), "b(%d,%d)", &hi, &lo) == 2 &&
               hi == lo + 1)
        m.factors.push_back(Token{Token::Kind::B, lo});
      else
        throw std::invalid_argument("from_text: malformed factor: " + tok);
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    out.monomials.push_back(std::move(m));
  }
  out.normalize();
  return out;
}

}  // namespace recur
