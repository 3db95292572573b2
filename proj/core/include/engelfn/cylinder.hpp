#pragma once

#include "engelfn/digit_stream.hpp"
#include "engelfn/rational.hpp"

#include <string>
#include <vector>

namespace engelfn {

/// Cylinder of rank m with base c_1 c_2 ... c_m: the set of all x in (0, 1]
/// whose first m E-symbols match the base. A left-open interval (a, b].
/// Rank 0 is the root cylinder (0, 1].
class Cylinder {
  public:
    Cylinder() = default;  // root
    explicit Cylinder(std::vector<Digit> base);

    std::size_t rank() const { return base_.size(); }
    const std::vector<Digit>& base() const { return base_; }

    /// sigma_k = c_1 + ... + c_k; sigma(0) = 0.
    long long sigma(std::size_t k) const;
    long long sigma() const { return sigma(base_.size()); }

    Cylinder child(Digit c) const;
    /// Base with the last digit incremented (the cylinder immediately below
    /// in x-order; its top endpoint is this cylinder's infimum). Rank >= 1.
    Cylinder lower_neighbor() const;

    /// Endpoints: a < b, the cylinder is (a, b].
    Rat a() const;
    Rat b() const;
    /// Closed-form length; equals b() - a() exactly.
    Rat length() const;
    /// |child(next)| / |this|, exact.
    Rat child_ratio(Digit next) const;

    /// The E-rational streams sitting at the endpoints (rank >= 1 for the
    /// infimum; the root's supremum is Delta^E_(0)).
    DigitStream infimum_point() const;
    DigitStream supremum_point() const;

    /// Base digits space-separated; "()" for the root.
    std::string str() const;

    bool operator==(const Cylinder& o) const { return base_ == o.base_; }
    bool operator<(const Cylinder& o) const { return base_ < o.base_; }

  private:
    std::vector<Digit> base_;
};

/// |delta_i(cyl)| / |cyl|: length contraction of the digit-prepending map.
/// Equals 1/2 exactly for i = 0 and is strictly below 1/(2+i) for i >= 1.
Rat prepend_length_ratio(const Cylinder& cyl, Digit i);

}  // namespace engelfn
