#pragma once

#include <vector>

#include "caspforge/csp.hpp"

namespace caspforge {

/// Per-variable current value sets, aligned with a CspInstance's variable
/// order. A state is wiped out when any set is empty or it was explicitly
/// marked so (e.g. a propagation conflict). Equality treats all wiped
/// states as equal: once a conflict is established the remaining sets
/// carry no information.
class DomainState {
public:
    DomainState() = default;

    explicit DomainState(std::vector<std::vector<Value>> sets) : sets_(std::move(sets)) {
        for (auto& s : sets_) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
    }

    static DomainState full(const CspInstance& csp) {
        std::vector<std::vector<Value>> sets;
        sets.reserve(static_cast<size_t>(csp.var_count()));
        for (const auto& v : csp.variables()) sets.push_back(v.domain);
        return DomainState(std::move(sets));
    }

    int var_count() const { return static_cast<int>(sets_.size()); }

    const std::vector<Value>& values(int v) const { return sets_[static_cast<size_t>(v)]; }

    bool contains(int v, Value x) const {
        const auto& s = sets_[static_cast<size_t>(v)];
        return std::binary_search(s.begin(), s.end(), x);
    }

    /// Removes a value; returns whether it was present.
    bool remove(int v, Value x) {
        auto& s = sets_[static_cast<size_t>(v)];
        auto it = std::lower_bound(s.begin(), s.end(), x);
        if (it == s.end() || *it != x) return false;
        s.erase(it);
        return true;
    }

    void restrict_to(int v, const std::vector<Value>& keep) {
        auto& s = sets_[static_cast<size_t>(v)];
        std::vector<Value> out;
        std::set_intersection(s.begin(), s.end(), keep.begin(), keep.end(),
                              std::back_inserter(out));
        s = std::move(out);
    }

    Value min(int v) const { return sets_[static_cast<size_t>(v)].front(); }
    Value max(int v) const { return sets_[static_cast<size_t>(v)].back(); }
    bool empty(int v) const { return sets_[static_cast<size_t>(v)].empty(); }

    bool wiped_out() const {
        if (wiped_) return true;
        for (const auto& s : sets_)
            if (s.empty()) return true;
        return false;
    }

    void set_wiped() { wiped_ = true; }

    friend bool operator==(const DomainState& a, const DomainState& b) {
        const bool wa = a.wiped_out(), wb = b.wiped_out();
        if (wa || wb) return wa == wb;
        return a.sets_ == b.sets_;
    }

private:
    std::vector<std::vector<Value>> sets_;
    bool wiped_ = false;
};

}  // namespace caspforge
