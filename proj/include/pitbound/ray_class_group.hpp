#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "pitbound/errors.hpp"
#include "pitbound/quadratic_field.hpp"

namespace pitbound {

inline constexpr i64 kMaxRayModulus = 10'000;

/// Ray class group modulo (n) of a class-number-one imaginary quadratic
/// field, realised as (O_K / n)^* modulo the image of the unit group.
///
/// Class 0 is the identity coset; the remaining classes are numbered in
/// order of first appearance when residues (a, b) are scanned
/// lexicographically.
class RayClassGroup {
 public:
  static RayClassGroup make(const QuadraticField& k, i64 n) {
    if (!k.class_number_one())
      throw UnsupportedFieldError("ray class groups need a class-number-one field, d = " + std::to_string(k.d()));
    if (n < 1) throw DomainError("modulus must be positive");
    if (n > kMaxRayModulus) throw ResourceError("modulus " + std::to_string(n) + " exceeds cap");

    RayClassGroup g;
    g.field_ = k;
    g.n_ = n;
    const std::size_t size = static_cast<std::size_t>(n * n);
    g.table_.assign(size, -1);

    std::vector<QInt> unit_residues;
    for (QInt u : k.units()) {
      const QInt r = g.reduce(u);
      bool seen = false;
      for (QInt v : unit_residues) seen = seen || v == r;
      if (!seen) unit_residues.push_back(r);
    }
    g.unit_image_ = unit_residues;

    const auto assign_coset = [&](QInt x, int cls) {
      for (QInt u : unit_residues) g.table_[g.index(k.mul_mod(u, x, n))] = cls;
    };
    assign_coset(g.reduce({1, 0}), 0);
    int next = 1;
    for (i64 a = 0; a < n; ++a)
      for (i64 b = 0; b < n; ++b) {
        const QInt x{a, b};
        if (!g.invertible(x)) continue;
        ++g.unit_group_order_;
        if (g.table_[g.index(x)] < 0) assign_coset(x, next++);
      }
    g.order_ = next;
    return g;
  }

  i64 modulus() const { return n_; }
  int order() const { return order_; }
  std::size_t residue_group_order() const { return unit_group_order_; }
  const std::vector<QInt>& unit_image() const { return unit_image_; }
  const QuadraticField& field() const { return field_; }

  QInt reduce(QInt x) const {
    const auto red = [this](i64 v) { return ((v % n_) + n_) % n_; };
    return {red(x.a), red(x.b)};
  }

  bool invertible(QInt x) const {
    const QInt r = reduce(x);
    const i64 nm = ((field_.norm(r) % n_) + n_) % n_;
    return std::gcd(nm, n_) == 1;
  }

  /// Class index of an element coprime to n, or -1 if it is not invertible mod n.
  int class_of(QInt x) const { return table_[index(reduce(x))]; }

 private:
  std::size_t index(QInt r) const { return static_cast<std::size_t>(r.a * n_ + r.b); }

  QuadraticField field_ = QuadraticField::make(-1);
  i64 n_ = 1;
  int order_ = 1;
  std::size_t unit_group_order_ = 0;
  std::vector<QInt> unit_image_;
  std::vector<int> table_;
};

}  // namespace pitbound
