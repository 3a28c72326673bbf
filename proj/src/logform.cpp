#include "ekron/logform.hpp"

namespace ekron {

void LogLinearForm::add_term(std::uint64_t prime, const ExactRational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(prime, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

LogLinearForm& LogLinearForm::operator+=(const LogLinearForm& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

LogLinearForm& LogLinearForm::operator-=(const LogLinearForm& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, ExactRational(-c));
    return *this;
}

LogLinearForm operator-(const LogLinearForm& a) {
    LogLinearForm r;
    for (const auto& [p, c] : a.terms_) r.add_term(p, ExactRational(-c));
    return r;
}

LogLinearForm& LogLinearForm::scale(const ExactRational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, coeff] : terms_) coeff *= c;
    return *this;
}

Real LogLinearForm::evaluate(mpfr_prec_t prec) const {
    Real sum(prec);
    for (const auto& [p, c] : terms_) {
        Real term = Real::log_ui(p, prec);
        term *= Real::of_q(c, prec);
        sum += term;
    }
    return sum;
}

std::string LogLinearForm::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        ExactRational a = c > 0 ? c : ExactRational(-c);
        if (first) {
            if (c < 0) out += "-";
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (a != 1) out += a.get_str() + "*";
        out += "log(" + std::to_string(p) + ")";
    }
    return out;
}

}  // namespace ekron
