#include "fralim/square.hpp"

#include <stdexcept>

namespace fralim {

Span::Span(Morphism left, Morphism right) : left_(std::move(left)), right_(std::move(right)) {
    if (left_.dom() != right_.dom())
        throw std::invalid_argument("span: legs have different apexes");
}

CommutingSquare::CommutingSquare(Span span, Morphism cospan_left, Morphism cospan_right)
    : span_(std::move(span)),
      cospan_left_(std::move(cospan_left)),
      cospan_right_(std::move(cospan_right)) {
    if (cospan_left_.dom() != span_.left().cod())
        throw std::invalid_argument("square: left cospan leg does not start at the left corner");
    if (cospan_right_.dom() != span_.right().cod())
        throw std::invalid_argument("square: right cospan leg does not start at the right corner");
    if (cospan_left_.cod() != cospan_right_.cod())
        throw std::invalid_argument("square: cospan legs land in different corners");
    if (!compose(cospan_left_, span_.left()).same_arrow(compose(cospan_right_, span_.right())))
        throw std::invalid_argument("square: does not commute");
}

CommutingSquare CommutingSquare::certified() const {
    CommutingSquare s = *this;
    s.pushout_certified_ = true;
    return s;
}

} // namespace fralim
