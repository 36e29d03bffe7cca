#pragma once

#include <compare>
#include <string>

namespace capwhitham {

struct MultiIndex {
    int a1 = 0;
    int a2 = 0;

    int order() const noexcept { return a1 + a2; }
    bool nonnegative() const noexcept { return a1 >= 0 && a2 >= 0; }

    friend MultiIndex operator+(MultiIndex x, MultiIndex y) { return {x.a1 + y.a1, x.a2 + y.a2}; }
    friend MultiIndex operator-(MultiIndex x, MultiIndex y) { return {x.a1 - y.a1, x.a2 - y.a2}; }
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

inline std::string to_string(MultiIndex m) {
    return "(" + std::to_string(m.a1) + "," + std::to_string(m.a2) + ")";
}

} // namespace capwhitham
