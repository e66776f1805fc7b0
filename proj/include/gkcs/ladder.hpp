#pragma once

// Exact symbolic algebra on polynomials in the two ladder symbols.
//
// A word is a finite product of letters from {lower, raise}; a polynomial is
// a finite complex-weighted sum of words. The engine provides Weyl
// symmetrization, normal-ordering reduction via [a, a+] = 1, the formal
// adjoint, and realization as dense matrices on a truncated number basis.
// Coefficients are machine complex numbers; identities are verified against
// the matrix realization rather than exact rationals.
//
// All functions are pure; polynomials are value types.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gkcs/fock.hpp"

namespace gkcs {

enum class Ladder : std::uint8_t { lower = 0, raise = 1 };

using Word = std::vector<Ladder>;  // empty word = identity

// Deterministic term order: by word length, then lexicographic.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

class LadderPolynomial {
 public:
  using TermMap = std::map<Word, Complex, WordLess>;

  LadderPolynomial() = default;

  static LadderPolynomial zero() { return {}; }
  static LadderPolynomial identity(Complex c = {1.0, 0.0}) {
    LadderPolynomial p;
    p.add(Word{}, c);
    return p;
  }
  static LadderPolynomial letter(Ladder l, Complex c = {1.0, 0.0}) {
    LadderPolynomial p;
    p.add(Word{l}, c);
    return p;
  }
  static LadderPolynomial lowering() { return letter(Ladder::lower); }
  static LadderPolynomial raising() { return letter(Ladder::raise); }

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // no stored term keeps a coefficient of exactly zero
  void add(const Word& w, Complex c) {
    if (c == Complex{0.0, 0.0}) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
    }
  }

  Complex coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
  }

  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) d = std::max(d, w.size());
    return d;
  }

  LadderPolynomial& operator+=(const LadderPolynomial& rhs) {
    for (const auto& [w, c] : rhs.terms_) add(w, c);
    return *this;
  }
  LadderPolynomial& operator-=(const LadderPolynomial& rhs) {
    for (const auto& [w, c] : rhs.terms_) add(w, -c);
    return *this;
  }
  LadderPolynomial& operator*=(Complex f) {
    if (f == Complex{0.0, 0.0}) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, c] : terms_) c *= f;
    return *this;
  }

  friend LadderPolynomial operator+(LadderPolynomial a, const LadderPolynomial& b) {
    a += b;
    return a;
  }
  friend LadderPolynomial operator-(LadderPolynomial a, const LadderPolynomial& b) {
    a -= b;
    return a;
  }
  friend LadderPolynomial operator*(LadderPolynomial a, Complex f) {
    a *= f;
    return a;
  }
  friend LadderPolynomial operator*(Complex f, LadderPolynomial a) {
    a *= f;
    return a;
  }

  // word concatenation, distributed over terms
  friend LadderPolynomial operator*(const LadderPolynomial& a, const LadderPolynomial& b) {
    LadderPolynomial out;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w;
        w.reserve(wa.size() + wb.size());
        w.insert(w.end(), wa.begin(), wa.end());
        w.insert(w.end(), wb.begin(), wb.end());
        out.add(w, ca * cb);
      }
    }
    return out;
  }

 private:
  TermMap terms_;
};

// formal adjoint: reverse each word, conjugate each coefficient
inline LadderPolynomial adjoint(const LadderPolynomial& p) {
  LadderPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = (l == Ladder::lower) ? Ladder::raise : Ladder::lower;
    out.add(r, std::conj(c));
  }
  return out;
}

// Weyl symmetrization: each word of length k is replaced by the average over
// all distinct permutations of its letters. Linear over terms; idempotent.
inline LadderPolynomial weyl_order(const LadderPolynomial& p) {
  LadderPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    Word sorted = w;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Word> perms;
    do {
      perms.push_back(sorted);
    } while (std::next_permutation(sorted.begin(), sorted.end()));
    const Complex share = c / static_cast<double>(perms.size());
    for (const auto& perm : perms) out.add(perm, share);
  }
  return out;
}

// Normal ordering: rewrite every word with all raise letters left of all
// lower letters using lower*raise = raise*lower + 1. The result is equal as
// an operator.
inline LadderPolynomial normal_order(const LadderPolynomial& p) {
  LadderPolynomial out;
  std::vector<std::pair<Word, Complex>> work(p.terms().begin(), p.terms().end());
  while (!work.empty()) {
    auto [w, c] = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    bool disordered = false;
    for (; i + 1 < w.size(); ++i) {
      if (w[i] == Ladder::lower && w[i + 1] == Ladder::raise) {
        disordered = true;
        break;
      }
    }
    if (!disordered) {
      out.add(w, c);
      continue;
    }
    Word contracted;
    contracted.reserve(w.size() - 2);
    contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
    std::swap(w[i], w[i + 1]);
    work.emplace_back(std::move(w), c);
    work.emplace_back(std::move(contracted), c);
  }
  return out;
}

// Dense matrix on the truncated number basis: a|n> = sqrt(n)|n-1>,
// a+|n> = sqrt(n+1)|n+1>. Each word is realized by walking the index chain
// column by column; steps leaving [0, dim) kill the entry, matching the
// product of truncated ladder matrices.
//
// The realization is adjoint-exact: to_matrix(adjoint(P)) is bitwise equal
// to the conjugate transpose of to_matrix(P). Two pieces make that work:
// the sqrt factors of a chain are multiplied in sorted order (a word and its
// adjoint traverse the same factor multiset), and contributions landing on
// the same entry are accumulated in a conjugation-invariant value order (the
// adjoint permutes which word produces which contribution).
inline FockMatrix to_matrix(const LadderPolynomial& p, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("to_matrix: dim must be >= 2");
  struct Contribution {
    std::uint32_t row, col;
    Complex value;
  };
  std::vector<Contribution> entries;
  std::vector<double> factors;
  for (const auto& [word, coeff] : p.terms()) {
    for (std::size_t col = 0; col < dim; ++col) {
      std::int64_t idx = static_cast<std::int64_t>(col);
      factors.clear();
      bool alive = true;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (*it == Ladder::lower) {
          if (idx == 0) {
            alive = false;
            break;
          }
          factors.push_back(static_cast<double>(idx));
          --idx;
        } else {
          ++idx;
          if (idx >= static_cast<std::int64_t>(dim)) {
            alive = false;
            break;
          }
          factors.push_back(static_cast<double>(idx));
        }
      }
      if (!alive) continue;
      std::sort(factors.begin(), factors.end());
      double amp = 1.0;
      for (double f : factors) amp *= std::sqrt(f);
      entries.push_back({static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(col),
                         coeff * amp});
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Contribution& a, const Contribution& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    const double ia = std::abs(a.value.imag()), ib = std::abs(b.value.imag());
    if (ia != ib) return ia < ib;
    return a.value.imag() < b.value.imag();
  });
  FockMatrix m(dim);
  for (const Contribution& e : entries) m.at(e.row, e.col) += e.value;
  return m;
}

// largest |coefficient difference| between two polynomials
inline double max_coefficient_diff(const LadderPolynomial& a, const LadderPolynomial& b) {
  double worst = 0.0;
  for (const auto& [w, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(w)));
  for (const auto& [w, c] : b.terms()) worst = std::max(worst, std::abs(c - a.coefficient(w)));
  return worst;
}

// Plain-text dump in normal-ordered form, deterministic term order
// (by word length, then lexicographic). Intended for debugging.
inline std::string dump(const LadderPolynomial& p) {
  const LadderPolynomial no = normal_order(p);
  if (no.empty()) return "0";
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& [w, c] : no.terms()) {
    if (!first) out += " + ";
    first = false;
    std::snprintf(buf, sizeof(buf), "(%.17g%+.17gi)", c.real(), c.imag());
    out += buf;
    std::size_t raises = 0, lowers = 0;
    for (auto l : w) (l == Ladder::raise ? raises : lowers)++;
    if (raises > 0) {
      out += " ad";
      if (raises > 1) out += "^" + std::to_string(raises);
    }
    if (lowers > 0) {
      out += " a";
      if (lowers > 1) out += "^" + std::to_string(lowers);
    }
  }
  return out;
}

}  // namespace gkcs
