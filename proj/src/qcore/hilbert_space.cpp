#include "cascade/qcore/hilbert_space.hpp"

#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cascade/qcore/types.hpp"

namespace cascade {

HilbertSpace::HilbertSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw DimensionError("HilbertSpace needs at least one factor");
    std::set<std::string> seen;
    long long total = 1;
    for (const auto& f : factors_) {
        if (f.dim < 1) throw DimensionError("factor '" + f.label + "' has non-positive dimension");
        if (!seen.insert(f.label).second) throw DimensionError("duplicate factor label '" + f.label + "'");
        if (!f.charges.empty() && static_cast<int>(f.charges.size()) != f.dim)
            throw DimensionError("factor '" + f.label + "' charge list does not match its dimension");
        total *= f.dim;
        if (total > std::numeric_limits<int>::max()) throw DimensionError("HilbertSpace dimension overflows");
        if (!f.charges.empty()) has_charges_ = true;
    }
    dim_ = static_cast<int>(total);

    charges_.assign(dim_, 0);
    if (has_charges_) {
        for (int idx = 0; idx < dim_; ++idx) {
            int rest = idx, q = 0;
            for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
                int digit = rest % it->dim;
                rest /= it->dim;
                if (!it->charges.empty()) q += it->charges[digit];
            }
            charges_[idx] = q;
        }
    }
}

std::shared_ptr<const HilbertSpace> HilbertSpace::make(std::vector<Factor> factors) {
    return std::make_shared<const HilbertSpace>(std::move(factors));
}

std::shared_ptr<const HilbertSpace> HilbertSpace::single(std::string label, int dim) {
    return make({Factor{std::move(label), dim, {}}});
}

std::size_t HilbertSpace::factor_index(std::string_view label) const {
    for (std::size_t k = 0; k < factors_.size(); ++k)
        if (factors_[k].label == label) return k;
    throw std::out_of_range("no factor labelled '" + std::string(label) + "'");
}

bool HilbertSpace::has_factor(std::string_view label) const {
    for (const auto& f : factors_)
        if (f.label == label) return true;
    return false;
}

int HilbertSpace::flatten(const std::vector<int>& digits) const {
    if (digits.size() != factors_.size()) throw DimensionError("digit count does not match factor count");
    int idx = 0;
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (digits[k] < 0 || digits[k] >= factors_[k].dim) throw DimensionError("digit out of range");
        idx = idx * factors_[k].dim + digits[k];
    }
    return idx;
}

std::vector<int> HilbertSpace::unflatten(int index) const {
    if (index < 0 || index >= dim_) throw DimensionError("basis index out of range");
    std::vector<int> digits(factors_.size());
    for (std::size_t k = factors_.size(); k-- > 0;) {
        digits[k] = index % factors_[k].dim;
        index /= factors_[k].dim;
    }
    return digits;
}

std::string HilbertSpace::describe() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        if (k) os << ", ";
        os << factors_[k].label << ':' << factors_[k].dim;
    }
    os << ']';
    return os.str();
}

bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t k = 0; k < a.factors_.size(); ++k) {
        const auto& x = a.factors_[k];
        const auto& y = b.factors_[k];
        if (x.label != y.label || x.dim != y.dim || x.charges != y.charges) return false;
    }
    return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

} // namespace cascade
