#ifndef QSPECTRA_SCALAR_HPP
#define QSPECTRA_SCALAR_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qspectra {

template <class Real> using Cplx = std::complex<Real>;

using Complex = Cplx<double>;

template <class Real> constexpr Real pi_v = Real(3.14159265358979323846264338327950288L);

template <class Real> inline bool is_finite(const Cplx<Real>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <class Real> inline void require_finite(const Cplx<Real>& z, const char* what) {
  if (!is_finite(z)) throw std::domain_error(std::string(what) + ": non-finite value");
}

// w^e with an explicitly supplied logarithm of the base, so that the branch
// is fixed by the caller rather than by arg(w).
template <class Real>
inline Cplx<Real> pow_with_log(const Cplx<Real>& log_base, const Cplx<Real>& e) {
  return std::exp(log_base * e);
}

// Principal-branch power for generic scalars (t^Q and the like).
template <class Real>
inline Cplx<Real> cpow(const Cplx<Real>& w, const Cplx<Real>& e) {
  if (w == Cplx<Real>(0)) return Cplx<Real>(0);
  return std::exp(std::log(w) * e);
}

// Parses "a", "bi", "a+bi", "a-bi"; bare "i"/"-i" accepted.
inline Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  auto parse_real = [](const std::string& t) -> double {
    std::size_t used = 0;
    double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad numeric literal: " + t);
    return v;
  };
  auto parse_imag_coeff = [&](std::string t) -> double {
    // t ends with 'i'
    t.pop_back();
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };

  if (s.back() != 'i' && s.back() != 'I') return Complex(parse_real(s), 0.0);

  // Find the split between real and imaginary parts: the last '+'/'-' that is
  // not the leading sign and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size() - 1; k > 0; --k) {
    char c = s[k];
    if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return Complex(0.0, parse_imag_coeff(s));
  return Complex(parse_real(s.substr(0, split)), parse_imag_coeff(s.substr(split)));
}

inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_complex(const Complex& z) {
  std::string s = format_real(z.real());
  s += (z.imag() < 0 || (z.imag() == 0 && std::signbit(z.imag()))) ? "-" : "+";
  s += format_real(std::abs(z.imag()));
  s += "i";
  return s;
}

} // namespace qspectra

#endif
