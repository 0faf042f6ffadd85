#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

/// One tensor factor. `charges` is either empty (all zero) or holds one
/// conserved integer per basis state, used to block the Liouvillian.
struct Factor {
    std::string label;
    int dim = 0;
    std::vector<int> charges;
};

/// Ordered tensor product of labelled factors. Immutable; the first factor
/// is the most significant index in the Kronecker layout.
class HilbertSpace {
public:
    explicit HilbertSpace(std::vector<Factor> factors);

    static std::shared_ptr<const HilbertSpace> make(std::vector<Factor> factors);
    static std::shared_ptr<const HilbertSpace> single(std::string label, int dim);

    int dim() const { return dim_; }
    std::size_t num_factors() const { return factors_.size(); }
    const std::vector<Factor>& factors() const { return factors_; }
    const Factor& factor(std::size_t k) const { return factors_.at(k); }

    /// Index of the factor with this label; throws std::out_of_range.
    std::size_t factor_index(std::string_view label) const;
    bool has_factor(std::string_view label) const;

    /// Total charge of each composite basis state.
    const std::vector<int>& charges() const { return charges_; }
    bool has_charges() const { return has_charges_; }

    int flatten(const std::vector<int>& digits) const;
    std::vector<int> unflatten(int index) const;

    std::string describe() const;

    friend bool operator==(const HilbertSpace& a, const HilbertSpace& b);

private:
    std::vector<Factor> factors_;
    std::vector<int> charges_;
    int dim_ = 1;
    bool has_charges_ = false;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

bool same_space(const SpacePtr& a, const SpacePtr& b);

} // namespace cascade
