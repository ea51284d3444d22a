#include "treerep/scalar.hpp"

#include <cctype>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace treerep {

namespace {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-')) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// A term carrying the imaginary marker: "i", "-i", "i/3", "2i", "2/5i", "2/5 i".
mpq_class parse_imaginary(std::string term) {
  std::erase(term, ' ');
  const auto pos = term.find('i');
  std::string rest = term.substr(0, pos) + term.substr(pos + 1);
  if (rest.empty() || rest == "+") return mpq_class(1);
  if (rest == "-") return mpq_class(-1);
  // "i/3" leaves "/3"; "-i/3" leaves "-/3".
  if (rest.front() == '/') rest = "1" + rest;
  if (rest.rfind("-/", 0) == 0) rest = "-1" + rest.substr(1);
  if (rest.rfind("+/", 0) == 0) rest = "1" + rest.substr(1);
  return parse_rational(rest);
}

}  // namespace

Scalar::Scalar(long num, long den) : re_(num, den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) || c == ' ') s.push_back(c);
  }
  while (!s.empty() && s.front() == ' ') s.erase(0, 1);
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty scalar");

  // Split at a '+' or '-' that is not leading and does not follow '/'.
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string first = s.substr(0, split);
  std::string second = split == std::string::npos ? std::string() : s.substr(split);

  mpq_class re;
  mpq_class im;
  auto absorb = [&](const std::string& term) {
    if (term.empty()) return;
    if (term.find('i') != std::string::npos) {
      im += parse_imaginary(term);
    } else {
      std::string t = term;
      std::erase(t, ' ');
      re += parse_rational(t);
    }
  };
  absorb(first);
  absorb(second);
  return Scalar(re, im);
}

int Scalar::sign() const {
  if (!is_real()) throw std::domain_error("sign of non-real scalar " + str());
  return sgn(re_);
}

Scalar Scalar::conj() const {
  if (is_real()) return *this;
  return Scalar(re_, -im_);
}

std::string Scalar::str() const {
  if (is_real()) return re_.get_str();
  std::string out = sgn(re_) == 0 ? std::string() : re_.get_str();
  const std::string im = im_.get_str();
  if (!out.empty() && im.front() != '-') out += '+';
  out += im + " i";
  return out;
}

std::string Scalar::approx(int digits) const {
  std::ostringstream os;
  os << std::setprecision(digits) << re_.get_d();
  if (!is_real()) os << (sgn(im_) < 0 ? "-" : "+") << std::abs(im_.get_d()) << "i";
  return os.str();
}

Scalar& Scalar::operator+=(const Scalar& o) {
  re_ += o.re_;
  if (!o.is_real()) im_ += o.im_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  re_ -= o.re_;
  if (!o.is_real()) im_ -= o.im_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero scalar");
  if (o.is_real()) {
    re_ /= o.re_;
    if (!is_real()) im_ /= o.re_;
    return *this;
  }
  const mpq_class n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar out(*this);
  out.re_ = -out.re_;
  if (!out.is_real()) out.im_ = -out.im_;
  return out;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  if (!a.is_real() || !b.is_real()) {
    throw std::domain_error("ordering of non-real scalars");
  }
  const int c = cmp(a.re_, b.re_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace treerep
