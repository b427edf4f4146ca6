#include "phaselab/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "phaselab/error.hpp"

namespace phaselab {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mask(int bits) noexcept {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

}  // namespace

DyadicPhase::DyadicPhase(std::uint64_t num, int bits) : num_(num), bits_(bits) {
    if (bits < 0 || bits > kMaxBits) {
        throw DomainError("DyadicPhase: precision " + std::to_string(bits) +
                          " outside [0, " + std::to_string(kMaxBits) + "]");
    }
    if (num > mask(bits)) {
        throw DomainError("DyadicPhase: numerator " + std::to_string(num) +
                          " not below 2^" + std::to_string(bits));
    }
}

double DyadicPhase::turns() const noexcept {
    return std::ldexp(static_cast<double>(num_), -bits_);
}

DyadicPhase DyadicPhase::lifted(int bits) const {
    if (bits < bits_) {
        throw DomainError("DyadicPhase::lifted: cannot lower precision");
    }
    return DyadicPhase(num_ << (bits - bits_), bits);
}

DyadicPhase DyadicPhase::reduced() const noexcept {
    DyadicPhase out = *this;
    if (out.num_ == 0) {
        out.bits_ = 0;
        return out;
    }
    while (out.bits_ > 0 && (out.num_ & 1U) == 0) {
        out.num_ >>= 1;
        --out.bits_;
    }
    return out;
}

DyadicPhase DyadicPhase::times(std::uint64_t j) const noexcept {
    DyadicPhase out;
    out.bits_ = bits_;
    out.num_ = static_cast<std::uint64_t>((u128{j} * num_) & mask(bits_));
    return out;
}

DyadicPhase operator+(const DyadicPhase& a, const DyadicPhase& b) {
    const int bits = std::max(a.bits_, b.bits_);
    const auto x = a.lifted(bits);
    const auto y = b.lifted(bits);
    return DyadicPhase((x.num_ + y.num_) & mask(bits), bits);
}

DyadicPhase operator-(const DyadicPhase& a, const DyadicPhase& b) {
    const int bits = std::max(a.bits_, b.bits_);
    const auto x = a.lifted(bits);
    const auto y = b.lifted(bits);
    return DyadicPhase((x.num_ - y.num_) & mask(bits), bits);
}

bool operator==(const DyadicPhase& a, const DyadicPhase& b) noexcept {
    const auto x = a.reduced();
    const auto y = b.reduced();
    return x.num_ == y.num_ && x.bits_ == y.bits_;
}

bool operator<(const DyadicPhase& a, const DyadicPhase& b) noexcept {
    const int bits = std::max(a.bits_, b.bits_);
    return (a.num_ << (bits - a.bits_)) < (b.num_ << (bits - b.bits_));
}

std::complex<double> unit_phase_residue(std::uint64_t residue, int bits) {
    residue &= mask(bits);
    if (residue == 0) {
        return {1.0, 0.0};
    }
    // Exact quarter turns.
    if (bits >= 2 && (residue & mask(bits - 2)) == 0) {
        switch (residue >> (bits - 2)) {
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    if (bits == 1) {
        return {-1.0, 0.0};
    }
    // Symmetric residue keeps the argument in [-pi, pi).
    const std::uint64_t half = std::uint64_t{1} << (bits - 1);
    const double signed_residue = residue >= half
        ? -static_cast<double>((std::uint64_t{1} << bits) - residue)
        : static_cast<double>(residue);
    const double angle = 2.0 * std::numbers::pi * std::ldexp(signed_residue, -bits);
    return {std::cos(angle), std::sin(angle)};
}

std::complex<double> unit_phase(std::uint64_t j, const DyadicPhase& phi) {
    return unit_phase_residue(phi.times(j).numerator(), phi.bits());
}

std::size_t PromiseSet::pair_of(const DyadicPhase& phi) const noexcept {
    for (std::size_t r = 0; r < pairs_.size(); ++r) {
        if (phases_[pairs_[r].first] == phi || phases_[pairs_[r].second] == phi) {
            return r;
        }
    }
    return pairs_.size();
}

PromiseSet build_promise_set(int k, int ell) {
    if (ell < 1) {
        throw DomainError("build_promise_set: ell must be >= 1");
    }
    if (k < 2 * ell + 1) {
        throw DomainError("build_promise_set: need k >= 2*ell+1 (k=" + std::to_string(k) +
                          ", ell=" + std::to_string(ell) + ")");
    }
    if (k > DyadicPhase::kMaxBits) {
        throw DomainError("build_promise_set: k exceeds " +
                          std::to_string(DyadicPhase::kMaxBits) + " bits");
    }
    if (ell > 16) {
        throw ResourceError("build_promise_set: ell > 16 would hold over 2^17 phases");
    }

    PromiseSet set;
    set.k_ = k;
    set.ell_ = ell;
    const std::uint64_t pairs = std::uint64_t{1} << ell;
    const std::uint64_t stride = std::uint64_t{1} << (k - ell);
    set.phases_.reserve(2 * pairs);
    set.pairs_.reserve(pairs);
    for (std::uint64_t r = 0; r < pairs; ++r) {
        const std::uint64_t base = r * stride;
        set.phases_.emplace_back(base, k);
        set.phases_.emplace_back(base + r + 1, k);
        set.pairs_.emplace_back(2 * r, 2 * r + 1);
    }
    return set;
}

DyadicPhase min_gap(std::span<const DyadicPhase> phases) {
    if (phases.size() < 2) {
        throw DomainError("min_gap: need at least two phases");
    }
    int bits = 0;
    for (const auto& p : phases) {
        bits = std::max(bits, p.bits());
    }
    std::vector<std::uint64_t> nums;
    nums.reserve(phases.size());
    for (const auto& p : phases) {
        nums.push_back(p.lifted(bits).numerator());
    }
    std::sort(nums.begin(), nums.end());
    nums.erase(std::unique(nums.begin(), nums.end()), nums.end());
    if (nums.size() < 2) {
        throw DomainError("min_gap: need at least two distinct phases");
    }
    // Sorted neighbours plus the wraparound gap cover every min(d, 2^k - d).
    const std::uint64_t full = std::uint64_t{1} << bits;
    std::uint64_t best = full - (nums.back() - nums.front());
    for (std::size_t i = 1; i < nums.size(); ++i) {
        best = std::min(best, nums[i] - nums[i - 1]);
    }
    return DyadicPhase(best, bits);
}

DyadicPhase min_gap(const PromiseSet& set) {
    return min_gap(std::span<const DyadicPhase>(set.phases()));
}

void to_json(nlohmann::json& j, const PromiseSet& set) {
    std::vector<std::uint64_t> nums;
    nums.reserve(set.size());
    for (const auto& p : set.phases()) {
        nums.push_back(p.lifted(set.k()).numerator());
    }
    j = nlohmann::json{{"k", set.k()}, {"ell", set.ell()}, {"numerators", nums}};
}

PromiseSet promise_set_from_json(const nlohmann::json& j) {
    auto set = build_promise_set(j.at("k").get<int>(), j.at("ell").get<int>());
    const auto nums = j.at("numerators").get<std::vector<std::uint64_t>>();
    if (nums.size() != set.size()) {
        throw DomainError("promise set JSON: wrong number of numerators");
    }
    for (std::size_t i = 0; i < nums.size(); ++i) {
        if (nums[i] != set.phases()[i].numerator()) {
            throw DomainError("promise set JSON: numerator " + std::to_string(i) +
                              " does not match F_ell");
        }
    }
    return set;
}

}  // namespace phaselab
