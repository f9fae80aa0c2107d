#pragma once

#include "fralim/morphism.hpp"

namespace fralim {

// Two arrows out of a common apex.
class Span {
public:
    Span(Morphism left, Morphism right);
    const Structure& apex() const { return left_.dom(); }
    const Morphism& left() const { return left_; }
    const Morphism& right() const { return right_; }

private:
    Morphism left_, right_;
};

// A span completed by a cospan, commuting on the nose:
// cospan_left ∘ span.left = cospan_right ∘ span.right.
// pushout_certified is set only through certified(), after the universal
// property has actually been checked.
class CommutingSquare {
public:
    CommutingSquare(Span span, Morphism cospan_left, Morphism cospan_right);

    const Span& span() const { return span_; }
    const Morphism& cospan_left() const { return cospan_left_; }
    const Morphism& cospan_right() const { return cospan_right_; }
    const Structure& corner() const { return cospan_left_.cod(); }
    StructureRef corner_ref() const { return cospan_left_.cod_ref(); }
    bool pushout_certified() const { return pushout_certified_; }

    CommutingSquare certified() const;

private:
    Span span_;
    Morphism cospan_left_, cospan_right_;
    bool pushout_certified_ = false;
};

} // namespace fralim
