#include "bnci/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "bnci/error.hpp"

namespace bnci {

namespace {

template <class Mass, class Leq>
MajorizationOrder compare(std::vector<Mass> a, std::vector<Mass> b, Leq leq) {
    for (const auto* v : {&a, &b}) {
        Mass total = 0;
        for (const auto& x : *v) {
            if (x < 0) throw Error(ErrorKind::NotNormalized, "negative probability");
            total += x;
        }
        if (!leq(total, Mass(1)) || !leq(Mass(1), total)) {
            throw Error(ErrorKind::NotNormalized, "probability vector does not sum to 1");
        }
    }
    const auto len = std::max(a.size(), b.size());
    a.resize(len, Mass(0));
    b.resize(len, Mass(0));
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    bool a_over_b = true;
    bool b_over_a = true;
    Mass sa = 0;
    Mass sb = 0;
    for (std::size_t k = 0; k < len; ++k) {
        sa += a[k];
        sb += b[k];
        if (!leq(sb, sa)) a_over_b = false;
        if (!leq(sa, sb)) b_over_a = false;
    }
    if (a_over_b && b_over_a) return MajorizationOrder::Both;
    if (a_over_b) return MajorizationOrder::AOverB;
    if (b_over_a) return MajorizationOrder::BOverA;
    return MajorizationOrder::Neither;
}

}  // namespace

std::string_view to_string(MajorizationOrder order) {
    switch (order) {
        case MajorizationOrder::AOverB: return "A_over_B";
        case MajorizationOrder::BOverA: return "B_over_A";
        case MajorizationOrder::Both: return "both";
        case MajorizationOrder::Neither: return "neither";
    }
    return "?";
}

MajorizationOrder majorizes(const std::vector<Rational>& pa, const std::vector<Rational>& pb) {
    return compare(pa, pb, [](const Rational& x, const Rational& y) { return x <= y; });
}

MajorizationOrder majorizes(const std::vector<double>& pa, const std::vector<double>& pb, double tol) {
    return compare(pa, pb, [tol](double x, double y) { return x <= y + tol; });
}

}  // namespace bnci
