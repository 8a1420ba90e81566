#pragma once

#include <string>
#include <utility>
#include <vector>

#include "starfield/mode_space.hpp"
#include "starfield/scalar.hpp"

namespace starfield {

/// Bilinear form on the mode space — the only datum a contraction star
/// product consumes.  No symmetry is assumed (the covariant pairing is
/// generically non-symmetric).
template <class S>
class PairingForm {
public:
    PairingForm(ModeSpacePtr space, std::string name)
        : space_(std::move(space)),
          name_(std::move(name)),
          entries_(space_->size() * space_->size(), ScalarTraits<S>::zero()) {}

    PairingForm(ModeSpacePtr space, std::string name, std::vector<S> entries)
        : space_(std::move(space)), name_(std::move(name)), entries_(std::move(entries)) {
        if (entries_.size() != space_->size() * space_->size())
            throw DimensionError("pairing matrix does not match the mode space");
    }

    const ModeSpacePtr& space() const { return space_; }
    const std::string& name() const { return name_; }
    std::size_t size() const { return space_->size(); }

    const S& at(std::size_t r, std::size_t s) const {
        return entries_.at(r * space_->size() + s);
    }
    void set(std::size_t r, std::size_t s, S v) {
        entries_.at(r * space_->size() + s) = std::move(v);
    }

private:
    ModeSpacePtr space_;
    std::string name_;
    std::vector<S> entries_;
};

}  // namespace starfield
