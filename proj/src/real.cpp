#include "ekron/real.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace ekron {

std::string Real::str(int digits) const {
    if (digits <= 0) {
        // full decimal resolution of this precision
        digits = static_cast<int>(std::floor(static_cast<double>(precision()) * 0.30103)) - 1;
        if (digits < 8) digits = 8;
    }
    std::vector<char> buf(static_cast<size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

}  // namespace ekron
