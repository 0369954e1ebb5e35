#pragma once
// Truncated multi-mode bosonic Fock bases.  A basis enumerates every
// occupation vector admitted by its truncation rule in lexicographic order
// and keeps the inverse index map, so operators and states built on equal
// parameters always agree element for element.

#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace iondistill {

using Occupation = std::vector<int>;

struct Truncation {
    enum class Kind { PerMode, TotalExcitation };

    Kind kind = Kind::PerMode;
    int bound = 0;

    static Truncation per_mode(int max_occupation) {
        if (max_occupation < 0)
            throw std::invalid_argument("Truncation: per-mode bound must be >= 0");
        return {Kind::PerMode, max_occupation};
    }

    static Truncation total_excitation(int n_max) {
        if (n_max < 0)
            throw std::invalid_argument("Truncation: total-excitation bound must be >= 0");
        return {Kind::TotalExcitation, n_max};
    }

    bool admits(const Occupation& occ) const {
        int total = 0;
        for (int n : occ) {
            if (n < 0) return false;
            if (kind == Kind::PerMode && n > bound) return false;
            total += n;
        }
        return kind == Kind::PerMode || total <= bound;
    }

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

class FockBasis {
public:
    static std::shared_ptr<const FockBasis> build(int n_modes, Truncation truncation) {
        if (n_modes < 1 || n_modes > 3)
            throw std::invalid_argument("FockBasis: n_modes must be 1, 2 or 3");
        return std::shared_ptr<const FockBasis>(new FockBasis(n_modes, truncation));
    }

    int n_modes() const { return n_modes_; }
    const Truncation& truncation() const { return truncation_; }
    int dim() const { return static_cast<int>(states_.size()); }
    const std::vector<Occupation>& states() const { return states_; }
    const Occupation& occupation(int index) const { return states_.at(static_cast<std::size_t>(index)); }

    std::optional<int> find(const Occupation& occ) const {
        auto it = index_.find(occ);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int index_of(const Occupation& occ) const {
        auto found = find(occ);
        if (!found) throw std::invalid_argument("FockBasis: occupation outside basis");
        return *found;
    }

    int total_excitation(int index) const {
        const Occupation& occ = occupation(index);
        return std::accumulate(occ.begin(), occ.end(), 0);
    }

    int max_total_excitation() const {
        return truncation_.kind == Truncation::Kind::PerMode ? n_modes_ * truncation_.bound
                                                             : truncation_.bound;
    }

    // Bases compare by construction parameters; enumeration is deterministic,
    // so equal parameters imply identical state lists.
    friend bool operator==(const FockBasis& a, const FockBasis& b) {
        return a.n_modes_ == b.n_modes_ && a.truncation_ == b.truncation_;
    }

private:
    FockBasis(int n_modes, Truncation truncation) : n_modes_(n_modes), truncation_(truncation) {
        Occupation occ(static_cast<std::size_t>(n_modes), 0);
        enumerate(occ, 0);
        for (int i = 0; i < dim(); ++i) index_[states_[static_cast<std::size_t>(i)]] = i;
    }

    void enumerate(Occupation& occ, int mode) {
        if (mode == n_modes_) {
            states_.push_back(occ);
            return;
        }
        for (int n = 0;; ++n) {
            occ[static_cast<std::size_t>(mode)] = n;
            if (!truncation_.admits(occ)) break;
            enumerate(occ, mode + 1);
        }
        occ[static_cast<std::size_t>(mode)] = 0;
    }

    int n_modes_;
    Truncation truncation_;
    std::vector<Occupation> states_;
    std::map<Occupation, int> index_;
};

}  // namespace iondistill
