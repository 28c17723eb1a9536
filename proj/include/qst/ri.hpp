#pragma once

// Resource inequalities over the unit resources.
//
//   expr     := sum ">=" sum
//   sum      := term ("+" term)*
//   term     := number? resource
//   resource := "[c->c]" | "[q->q]" | "[qq]" | "[cc]" | "<" ident ">"
//   number   := digits ("." digits)?
//
// Whitespace is ignored between tokens.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qst/geometry.hpp"

namespace qst::ri {

enum class Resource { CBit, QBit, EBit, CommonRandomness, Noisy };

struct Term {
  double coefficient = 1.0;
  Resource resource = Resource::CBit;
  std::string name;  ///< noisy resources only
};

struct Expr {
  std::vector<Term> lhs;
  std::vector<Term> rhs;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class RateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Like terms are merged and sorted ([c->c], [q->q], [qq], [cc], then noisy
/// resources by name), so print(parse(t)) is a canonical form.
Expr parse(const std::string& text);
std::string print(const Expr& expr);

struct NetRate {
  RateTriple rate;          ///< rhs generated minus lhs consumed
  std::string noisy;        ///< name of the noisy lhs resource, if any
  bool has_noisy() const { return !noisy.empty(); }
};

/// Throws RateError for [cc] terms, noisy resources on the rhs, or more than
/// one noisy resource.
NetRate net_rate(const Expr& expr);

struct Derivation {
  bool derivable = false;
  std::string reason;                   ///< set when the target is ineligible
  std::vector<double> protocol_weights; ///< one per supplied protocol
  RateTriple waste;                     ///< discarded resources, componentwise >= 0
};

/// net_rate(target) in cone{protocols} + cone{waste}. A protocol consuming a
/// noisy resource is usable only if the target supplies the same resource,
/// and then with total weight at most one.
Derivation derivable(const Expr& target, const std::vector<Expr>& protocols);

/// Sum of weighted protocol rates minus waste.
RateTriple replay(const Derivation& d, const std::vector<Expr>& protocols);

}  // namespace qst::ri
