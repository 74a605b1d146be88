#include <doctest.h>

#include <random>

#include "bnci/error.hpp"
#include "bnci/reduction.hpp"
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

bool is_trivial(const FdEntry& fd) { return std::find(fd.a.begin(), fd.a.end(), fd.b) != fd.a.end(); }

// Random valid instance with a duplicated target.
ImplicationInstance random_instance(std::mt19937_64& rng) {
    ImplicationInstance inst;
    inst.n = 2 + static_cast<std::uint32_t>(rng() % 4);
    for (std::uint32_t i = 1; i <= inst.n; ++i) {
        switch (rng() % 3) {
            case 0: inst.c1.push_back(i); break;
            case 1: inst.c2.push_back(i); break;
            default: break;
        }
    }
    const auto k = static_cast<std::uint32_t>(rng() % 3);
    for (std::uint32_t j = 0; j < k; ++j) {
        FdEntry fd;
        fd.b = 1 + static_cast<std::uint32_t>(rng() % inst.n);
        for (std::uint32_t i = 1; i <= inst.n; ++i) {
            if (i != fd.b && rng() % 2) fd.a.push_back(i);
        }
        if (fd.a.empty()) fd.a.push_back(fd.b == 1 ? 2 : 1);
        inst.fds.push_back(fd);
    }
    const auto a0 = 1 + static_cast<std::uint32_t>(rng() % inst.n);
    inst.target = FdTarget{a0, a0 == inst.n ? 1 : a0 + 1};
    return duplicate_target_variable(inst);
}

}  // namespace

TEST_CASE("duplicate_target_variable") {
    ImplicationInstance inst;
    inst.n = 3;
    inst.target = FdTarget{1, 3};
    const auto d = duplicate_target_variable(inst);
    CHECK(d.n == 4);
    CHECK(d.fds == std::vector<FdEntry>{{{3}, 4}, {{4}, 3}});
    CHECK(d.b0_prime == std::optional<std::uint32_t>{4});

    ImplicationInstance two;
    two.n = 4;
    two.fds = {{{1, 3}, 2}};
    two.target = FdTarget{1, 3};
    const auto d2 = duplicate_target_variable(two);
    CHECK(d2.n == 5);
    CHECK(d2.fds == std::vector<FdEntry>{{{1, 3}, 2}, {{3}, 5}, {{5}, 3}});

    CHECK(kind_of([&] { duplicate_target_variable(d); }) == ErrorKind::AlreadyDuplicated);
    ImplicationInstance no_target;
    no_target.n = 2;
    CHECK(kind_of([&] { duplicate_target_variable(no_target); }) == ErrorKind::InvalidInstance);
    CHECK(d.label(4) == "V4");
    auto named = inst;
    named.labels = {"a", "b", "c"};
    CHECK(duplicate_target_variable(named).label(4) == "c_dup");
}

TEST_CASE("instance validation") {
    ImplicationInstance inst;
    inst.n = 3;
    inst.c1 = {1, 2};
    inst.c2 = {2, 3, 3};
    CHECK(kind_of([&] { inst.validate(); }) == ErrorKind::InvalidInstance);
    // Overlapping groups are accepted; the figure 2 instance has them.
    inst.c2 = {2, 3};
    CHECK_NOTHROW(inst.validate());
    inst.fds = {{{1}, 1}};
    CHECK(kind_of([&] { inst.validate(); }) == ErrorKind::InvalidInstance);
    inst.fds = {{{1}, 4}};
    CHECK(kind_of([&] { inst.validate(); }) == ErrorKind::InvalidInstance);
    inst.fds = {};
    inst.target = FdTarget{1, 2};
    inst.b0_prime = 3;
    CHECK(kind_of([&] { inst.validate(); }) == ErrorKind::InvalidInstance);
    inst.fds = {{{2}, 3}, {{3}, 2}};
    CHECK_NOTHROW(inst.validate());
}

TEST_CASE("implication B layout and fd counts") {
    ImplicationAInstance a;
    a.n = 3;
    const ImplicationBLayout layout{3};
    CHECK(layout.size() == 29);
    CHECK(layout.labels().front() == "Q");
    CHECK(layout.labels()[layout.w(10) - 1] == "W10");
    CHECK(layout.labels().back() == "M9");

    // Per family: 6n + 1 + 6 + 3n + 3n + 6n + k.
    CHECK(implication_b_fd_expansion(a).size() == 61);
    const auto b = build_implication_b(a);
    CHECK(b.n == 29);
    CHECK(b.c1 == std::vector<std::uint32_t>{1, 2, 3, 4});
    auto c2 = b.c2;
    std::sort(c2.begin(), c2.end());
    CHECK(c2 == std::vector<std::uint32_t>{20, 21, 22, 23, 24, 25, 26, 27, 28, 29});
    for (std::uint32_t i : b.c1) CHECK(std::find(b.c2.begin(), b.c2.end(), i) == b.c2.end());

    // Dropping the 6 + 9 entries whose dependent is among its determinants:
    // V_i <= (V1,V2,V3) for i <= 3, and the three triple components equal to
    // the base triple.
    CHECK(b.fds.size() == 46);
    for (const auto& fd : b.fds) CHECK_FALSE(is_trivial(fd));
    std::set<FdEntry> unique(b.fds.begin(), b.fds.end());
    CHECK(unique.size() == b.fds.size());

    ImplicationAInstance one;
    one.n = 1;
    CHECK(build_implication_b(one).fds.size() == 16);
    ImplicationAInstance two;
    two.n = 2;
    CHECK(build_implication_b(two).fds.size() == 31);

    a.fds = {{{1, 2}, 3}};
    CHECK(implication_b_fd_expansion(a).size() == 62);
    a.pairwise = {{1, 2}};
    CHECK(kind_of([&] { build_implication_b(a); }) == ErrorKind::InvalidInstance);
}

TEST_CASE("implication B fd families") {
    ImplicationAInstance a;
    a.n = 2;
    const ImplicationBLayout L{2};
    const auto fds = build_implication_b(a).fds;
    auto has = [&](std::vector<std::uint32_t> lhs, std::uint32_t rhs) {
        std::sort(lhs.begin(), lhs.end());
        return std::find(fds.begin(), fds.end(), FdEntry{lhs, rhs}) != fds.end();
    };
    CHECK(has({L.w(2), L.m(1)}, L.w(1)));
    CHECK(has({L.w(1), L.m(1)}, L.w(2)));
    CHECK(has({L.w(7), L.q()}, L.w(1)));
    CHECK(has({L.v(2)}, L.w(2)));
    CHECK(has({L.w(3)}, L.v(3)));
    CHECK(has({L.v(1), L.v(2), L.v(3)}, L.v(6)));
    CHECK(has({L.w(5), L.q()}, L.v(5)));
    // Triple (V2, V4, V6) determines the base triple and back.
    CHECK(has({L.v(2), L.v(4), L.v(6)}, L.v(1)));
    CHECK(has({L.v(1), L.v(2), L.v(3)}, L.v(4)));
}

TEST_CASE("eliminate pairwise independence") {
    ImplicationAInstance a;
    a.n = 4;
    a.pairwise = {{2, 4}};
    const auto e = eliminate_pairwise_independence(a);
    CHECK(e.n == 5);
    CHECK(e.pairwise.empty());
    // (V2, V4, Y) and (V1, V2, V3) determine each other; V2 <= V2 is dropped.
    CHECK(std::find(e.fds.begin(), e.fds.end(), FdEntry{{2, 4, 5}, 1}) != e.fds.end());
    CHECK(std::find(e.fds.begin(), e.fds.end(), FdEntry{{1, 2, 3}, 5}) != e.fds.end());
    CHECK(std::find(e.fds.begin(), e.fds.end(), FdEntry{{1, 2, 3}, 4}) != e.fds.end());
    CHECK(e.fds.size() == 4);
    a.n = 2;
    a.pairwise = {{1, 2}};
    CHECK(kind_of([&] { eliminate_pairwise_independence(a); }) == ErrorKind::InvalidInstance);
}

TEST_CASE("figure 2 compilation") {
    const auto inst = testing::figure2_instance();
    const auto out = compile_two_networks(inst);
    CHECK(out.network1.node_count() == 24);
    CHECK(out.network1.edge_count() == 25);
    CHECK(out.network2.edge_count() == 26);
    CHECK(out.role_index.size() == 24);
    CHECK(out.network1.labels().front() == "U_1");
    CHECK(out.network1.labels()[8] == "X_1^1");
    CHECK(out.network1.labels()[9] == "X_1^2");
    CHECK(out.network1.labels().back() == "Z_4");

    const RoleLayout L{4, 3};
    CHECK(out.target_ci == CiStatement({L.y(3)}, {L.y(1)}, {L.y(4)}));

    const auto& g1 = out.network1;
    CHECK(g1.has_edge(L.u(1), L.u(3)));
    CHECK(g1.has_edge(L.u(2), L.u(4)));
    CHECK(g1.has_edge(L.u(3), L.u(4)));
    CHECK_FALSE(g1.has_edge(L.u(1), L.u(2)));
    CHECK(g1.has_edge(L.y(2), L.x(2, 1)));
    CHECK(g1.has_edge(L.x(2, 3), L.z(2)));

    const auto& g2 = out.network2;
    CHECK(g2.has_edge(L.u(2), L.u(1)));
    CHECK(g2.has_edge(L.u(1), L.u(4)));
    CHECK(g2.has_edge(L.u(1), L.z(1)));
    CHECK(g2.has_edge(L.z(1), L.y(1)));
    CHECK(g2.has_edge(L.u(1), L.x(1, 1)));
    CHECK_FALSE(g2.has_edge(L.u(2), L.x(2, 1)));
    CHECK(g2.has_edge(L.x(1, 1), L.x(2, 1)));
    CHECK(g2.has_edge(L.x(3, 1), L.x(2, 1)));
    CHECK(g2.has_edge(L.x(4, 3), L.x(3, 3)));

    auto undup = inst;
    undup.b0_prime.reset();
    CHECK(kind_of([&] { compile_two_networks(undup); }) == ErrorKind::MissingDuplicate);
}

TEST_CASE("compiled networks have the stated size for random instances") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_instance(rng);
        const auto k = inst.fds.size();
        // Construction of each Dag already rejects cycles.
        const auto out = compile_two_networks(inst);
        CHECK(out.network1.node_count() == inst.n * (k + 3));
        CHECK(out.network2.node_count() == inst.n * (k + 3));
        const std::size_t n = inst.n;
        auto group_edges = [&](std::size_t g) { return g * (n - g) + (n - g) * (n - g - 1) / 2; };
        CHECK(out.network1.edge_count() == group_edges(inst.c1.size()) + n * (k + 2));
        std::size_t fd_edges = 0;
        for (const auto& fd : inst.fds) fd_edges += fd.a.size() + (n - 1);
        CHECK(out.network2.edge_count() == group_edges(inst.c2.size()) + 2 * n + fd_edges);
    }
}

TEST_CASE("instance text round trip") {
    const auto fig2 = testing::figure2_instance();
    const auto parsed = parse_instance(format_instance(fig2));
    REQUIRE(std::holds_alternative<ImplicationInstance>(parsed));
    const auto& p = std::get<ImplicationInstance>(parsed);
    CHECK(p.n == fig2.n);
    CHECK(p.c1 == fig2.c1);
    CHECK(p.fds == fig2.fds);
    CHECK(p.target == fig2.target);
    CHECK(p.b0_prime == fig2.b0_prime);

    const auto text = "# figure 2\nn 4\ngroup1 1 2\ngroup2 2,3\nfd 1 3 -> 2\nfd 3 -> 4\nfd 4 -> 3\ntarget 1 -> 3\ndup 4\n";
    CHECK(std::get<ImplicationInstance>(parse_instance(text)).fds == fig2.fds);

    ImplicationAInstance a;
    a.n = 4;
    a.fds = {{{1, 2}, 4}};
    a.pairwise = {{1, 4}};
    a.target = FdTarget{2, 4};
    const auto pa = std::get<ImplicationAInstance>(parse_instance(format_instance(a)));
    CHECK(pa.fds == a.fds);
    CHECK(pa.pairwise == a.pairwise);
    CHECK(pa.target == a.target);

    CHECK(kind_of([] { parse_instance("group1 1\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_instance("n 2\nbogus 1\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_instance("n 2\npairwise 1 2\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_instance("n 2\nfd 1 -> 3\n"); }) == ErrorKind::InvalidInstance);
}
