#include "qst/ri.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "qst/simplex.hpp"

namespace qst::ri {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr run() {
    Expr e;
    e.lhs = sum();
    skip();
    if (s_.compare(pos_, 2, ">=") != 0) throw ParseError(pos_, "expected '>='");
    pos_ += 2;
    e.rhs = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, "unexpected trailing input");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::vector<Term> sum() {
    std::vector<Term> terms{term()};
    for (;;) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '+') {
        ++pos_;
        terms.push_back(term());
      } else {
        return terms;
      }
    }
  }

  Term term() {
    skip();
    Term t;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '.') {
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          throw ParseError(pos_, "expected digits after decimal point");
        }
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, t.coefficient);
      if (ec != std::errc() || !std::isfinite(t.coefficient)) throw ParseError(start, "bad number");
      skip();
    }
    const std::size_t at = pos_;
    static const std::pair<const char*, Resource> kUnits[] = {
        {"[c->c]", Resource::CBit}, {"[q->q]", Resource::QBit}, {"[qq]", Resource::EBit}, {"[cc]", Resource::CommonRandomness}};
    for (const auto& [tok, res] : kUnits) {
      const std::string token(tok);
      if (s_.compare(pos_, token.size(), token) == 0) {
        pos_ += token.size();
        t.resource = res;
        return t;
      }
    }
    if (pos_ < s_.size() && s_[pos_] == '<') {
      ++pos_;
      const std::size_t start = pos_;
      if (pos_ >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        throw ParseError(pos_, "expected a resource name");
      }
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
        ++pos_;
      }
      if (pos_ >= s_.size() || s_[pos_] != '>') throw ParseError(pos_, "expected '>' closing a resource name");
      t.resource = Resource::Noisy;
      t.name = s_.substr(start, pos_ - start);
      ++pos_;
      if (t.coefficient != 1.0) throw ParseError(at, "noisy resources carry no coefficient");
      return t;
    }
    throw ParseError(at, "unknown resource");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

int rank(const Term& t) { return static_cast<int>(t.resource); }

std::vector<Term> canonical(const std::vector<Term>& terms) {
  std::vector<Term> out;
  for (const auto& t : terms) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Term& o) {
      return o.resource == t.resource && o.name == t.name && t.resource != Resource::Noisy;
    });
    if (it != out.end()) it->coefficient += t.coefficient;
    else out.push_back(t);
  }
  std::stable_sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
    return std::forward_as_tuple(rank(a), a.name) < std::forward_as_tuple(rank(b), b.name);
  });
  return out;
}

std::string number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  (void)ec;
  return std::string(buf, ptr);
}

std::string print_side(const std::vector<Term>& terms) {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    if (t.coefficient != 1.0) out += number(t.coefficient);
    switch (t.resource) {
      case Resource::CBit: out += "[c->c]"; break;
      case Resource::QBit: out += "[q->q]"; break;
      case Resource::EBit: out += "[qq]"; break;
      case Resource::CommonRandomness: out += "[cc]"; break;
      case Resource::Noisy: out += "<" + t.name + ">"; break;
    }
  }
  return out;
}

void accumulate(RateTriple& r, const Term& t, double sign) {
  switch (t.resource) {
    case Resource::CBit: r.C += sign * t.coefficient; break;
    case Resource::QBit: r.Q += sign * t.coefficient; break;
    case Resource::EBit: r.E += sign * t.coefficient; break;
    case Resource::CommonRandomness: throw RateError("common randomness [cc] has no place in (C,Q,E) space");
    case Resource::Noisy: break;
  }
}

}  // namespace

Expr parse(const std::string& text) {
  Expr e = Parser(text).run();
  e.lhs = canonical(e.lhs);
  e.rhs = canonical(e.rhs);
  return e;
}

std::string print(const Expr& expr) { return print_side(expr.lhs) + " >= " + print_side(expr.rhs); }

NetRate net_rate(const Expr& expr) {
  NetRate n;
  for (const auto& t : expr.lhs) {
    if (t.resource == Resource::Noisy) {
      if (n.has_noisy()) throw RateError("at most one noisy resource may be consumed");
      n.noisy = t.name;
    }
    accumulate(n.rate, t, -1.0);
  }
  for (const auto& t : expr.rhs) {
    if (t.resource == Resource::Noisy) throw RateError("noisy resource '" + t.name + "' cannot be generated");
    accumulate(n.rate, t, 1.0);
  }
  return n;
}

Derivation derivable(const Expr& target, const std::vector<Expr>& protocols) {
  Derivation d;
  d.protocol_weights.assign(protocols.size(), 0.0);
  NetRate goal;
  try {
    goal = net_rate(target);
  } catch (const RateError& e) {
    d.reason = e.what();
    return d;
  }

  std::vector<std::size_t> usable;
  std::vector<bool> noisy;
  std::vector<RateTriple> rates;
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    try {
      const auto r = net_rate(protocols[i]);
      if (r.has_noisy() && r.noisy != goal.noisy) continue;
      usable.push_back(i);
      noisy.push_back(r.has_noisy());
      rates.push_back(r.rate);
    } catch (const RateError&) {
      // [cc] protocols are ineligible.
    }
  }
  const bool budget = std::any_of(noisy.begin(), noisy.end(), [](bool b) { return b; });
  const auto n = static_cast<Eigen::Index>(usable.size());
  const Eigen::Index cols = n + 3 + (budget ? 1 : 0);
  lp::Problem prob;
  prob.A = Eigen::MatrixXd::Zero(3 + (budget ? 1 : 0), cols);
  prob.b = Eigen::VectorXd::Zero(prob.A.rows());
  for (Eigen::Index i = 0; i < n; ++i) {
    prob.A.col(i).head(3) = rates[static_cast<std::size_t>(i)].vec();
    if (budget && noisy[static_cast<std::size_t>(i)]) prob.A(3, i) = 1.0;
  }
  prob.A.block(0, n, 3, 3) = -Eigen::Matrix3d::Identity();
  prob.b.head(3) = goal.rate.vec();
  if (budget) {
    prob.A(3, n + 3) = 1.0;
    prob.b(3) = 1.0;
  }
  const auto res = lp::solve(prob, 1e-9);
  if (res.status != lp::Status::Optimal) return d;
  d.derivable = true;
  for (Eigen::Index i = 0; i < n; ++i) d.protocol_weights[usable[static_cast<std::size_t>(i)]] = res.x(i);
  d.waste = {res.x(n), res.x(n + 1), res.x(n + 2)};
  return d;
}

RateTriple replay(const Derivation& d, const std::vector<Expr>& protocols) {
  RateTriple sum;
  for (std::size_t i = 0; i < protocols.size(); ++i) {
    if (d.protocol_weights[i] == 0.0) continue;
    sum = sum + net_rate(protocols[i]).rate * d.protocol_weights[i];
  }
  return sum - d.waste;
}

}  // namespace qst::ri
