#include <doctest.h>

#include <set>

#include "bnci/error.hpp"
#include "bnci/independence.hpp"
#include "bnci/witness.hpp"
#include "support.hpp"

using namespace bnci;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Io;
}

NodeSet zero_based(std::initializer_list<std::uint32_t> one_based) {
    std::vector<NodeId> ids;
    for (auto i : one_based) ids.push_back(i - 1);
    return NodeSet(ids);
}

}  // namespace

TEST_CASE("trivial witness on the figure 2 instance") {
    const auto inst = testing::figure2_instance();
    const auto pv = testing::figure2_pv();
    CHECK(violated_antecedents(inst, pv).empty());
    const auto w = trivial_witness(inst, pv);
    const auto out = compile_two_networks(inst);
    CHECK(w.variable_count() == 24);
    CHECK(w.labels() == out.network1.labels());
    CHECK(satisfies_network(w, out.network1).residual == 0.0);
    CHECK(satisfies_network(w, out.network2).residual == 0.0);
    CHECK_FALSE(check_ci(w, out.target_ci).holds);
}

TEST_CASE("trivial witness rejects a bad pV") {
    const auto inst = testing::figure2_instance();
    std::vector<std::pair<Outcome, Rational>> e;
    for (Value a = 0; a < 2; ++a) {
        for (Value c = 0; c < 2; ++c) e.push_back({{a, a ^ c, c, 1 - c}, Rational(1, 4)});
    }
    const JointDist flipped({"V1", "V2", "V3", "V4"}, {2, 2, 2, 2}, e);
    // V4 = 1 - V3 still determines V3, so this one is fine.
    CHECK(violated_antecedents(inst, flipped).empty());

    e.clear();
    for (Value a = 0; a < 2; ++a) {
        for (Value c = 0; c < 2; ++c) {
            for (Value d = 0; d < 2; ++d) e.push_back({{a, a ^ c, c, d}, Rational(1, 8)});
        }
    }
    const JointDist loose({"V1", "V2", "V3", "V4"}, {2, 2, 2, 2}, e);
    CHECK(violated_antecedents(inst, loose) == std::vector<std::string>{"fd 3 -> 4", "fd 4 -> 3"});
    CHECK(kind_of([&] { trivial_witness(inst, loose); }) == ErrorKind::AntecedentViolated);

    auto undup = inst;
    undup.b0_prime.reset();
    CHECK(kind_of([&] { trivial_witness(undup, testing::figure2_pv()); }) == ErrorKind::MissingDuplicate);
    CHECK(kind_of([&] { trivial_witness(inst, testing::xor_triple()); }) == ErrorKind::NodeCountMismatch);
}

TEST_CASE("implication B witness for one variable") {
    ImplicationAInstance a;
    a.n = 1;
    const auto w = implication_b_witness(JointDist::uniform({"V1"}, {2}), a);
    const ImplicationBLayout L{1};
    CHECK(w.variable_count() == 11);
    CHECK(w.labels() == L.labels());
    CHECK(violated_antecedents(build_implication_b(a), w).empty());

    const auto iid = zero_based({L.m(1), L.m(2), L.m(3), L.w(4)});
    CHECK(check_mutual_independence(w, iid).residual == 0.0);
    for (NodeId v : iid) CHECK(exact_pmf(w, v) == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(check_fd(w, zero_based({L.w(4), L.q()}), L.w(1) - 1).residual == 0.0);
}

TEST_CASE("implication B witness for two variables") {
    ImplicationAInstance a;
    a.n = 2;
    const auto w = implication_b_witness(JointDist::uniform({"V1", "V2"}, {2, 2}), a);
    CHECK(w.variable_count() == 20);
    CHECK(violated_antecedents(build_implication_b(a), w).empty());
}

TEST_CASE("implication B witness degenerate and guarded cases") {
    ImplicationAInstance a;
    a.n = 1;
    const JointDist constant({"V1"}, {1}, {{{0}, Rational(1)}});
    const auto w = implication_b_witness(constant, a);
    CHECK(w.support_size() == 1);
    CHECK(violated_antecedents(build_implication_b(a), w).empty());

    a.n = 3;
    CHECK(kind_of([&] { implication_b_witness(JointDist::uniform({"a", "b", "c"}, {2, 2, 2}), a); }) ==
          ErrorKind::GuardExceeded);

    a.n = 2;
    CHECK(kind_of([&] { implication_b_witness(testing::xor_triple().marginal({0, 2}).marginal({0}), a); }) ==
          ErrorKind::NodeCountMismatch);
    const JointDist skewed({"V1", "V2"}, {2, 2},
                           {{{0, 0}, Rational(1, 2)}, {{1, 0}, Rational(1, 4)}, {{1, 1}, Rational(1, 4)}});
    CHECK(kind_of([&] { implication_b_witness(skewed, a); }) == ErrorKind::AntecedentViolated);
}

TEST_CASE("iid extension examples") {
    const std::vector<Value> high{0, 0, 1, 1};
    const std::vector<Value> low{0, 1, 0, 1};
    const auto y = iid_extend_witness(2, 2, {high});
    REQUIRE(y.has_value());
    REQUIRE(y->size() == 1);
    CHECK(y->front() == low);

    CHECK_FALSE(iid_extend_witness(2, 2, {{0, 0, 0, 1}}).has_value());

    const auto none = iid_extend_witness(2, 2, {low, high});
    REQUIRE(none.has_value());
    CHECK(none->empty());

    CHECK(kind_of([] { iid_extend_witness(2, 2, {{0, 1, 2, 0}}); }) == ErrorKind::RangeTooLarge);
    CHECK(kind_of([] { iid_extend_witness(2, 1, {{0, 1}, {1, 0}}); }) == ErrorKind::InvalidInstance);
    CHECK(kind_of([] { iid_extend_witness(2, 2, {{0, 1}}); }) == ErrorKind::InvalidInstance);
}

TEST_CASE("iid extension exists exactly for uniform functions") {
    for (unsigned f = 0; f < 16; ++f) {
        std::vector<Value> x(4);
        for (unsigned v = 0; v < 4; ++v) x[v] = f >> v & 1;
        const bool uniform = std::count(x.begin(), x.end(), 1) == 2;
        const auto y = iid_extend_witness(2, 2, {x});
        CHECK(y.has_value() == uniform);
        if (!y) continue;
        std::set<std::pair<Value, Value>> images;
        for (unsigned v = 0; v < 4; ++v) images.insert({x[v], (*y)[0][v]});
        CHECK(images.size() == 4);
    }
}
