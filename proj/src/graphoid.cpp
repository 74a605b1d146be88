#include "bnci/graphoid.hpp"

#include <bit>
#include <cstdint>
#include <deque>
#include <unordered_set>
#include <vector>

#include "bnci/error.hpp"

namespace bnci {

namespace {

struct Triple {
    std::uint32_t a;
    std::uint32_t c;
    std::uint32_t b;
};

constexpr unsigned kBits = 10;

Triple oriented(std::uint32_t a, std::uint32_t c, std::uint32_t b) {
    return a <= b ? Triple{a, c, b} : Triple{b, c, a};
}

std::uint32_t key(const Triple& t) { return t.a | (t.c << kBits) | (t.b << (2 * kBits)); }

class Closure {
public:
    void add(std::uint32_t a, std::uint32_t c, std::uint32_t b) {
        if (a == 0 || b == 0) return;
        const Triple t = oriented(a, c, b);
        if (seen_.insert(key(t)).second) {
            all_.push_back(t);
            pending_.push_back(t);
        }
    }

    void run() {
        while (!pending_.empty()) {
            const Triple s = pending_.front();
            pending_.pop_front();
            for (const auto& [x, y] : {std::pair{s.a, s.b}, std::pair{s.b, s.a}}) {
                for (std::uint32_t rest = y; rest != 0; rest &= rest - 1) {
                    const std::uint32_t w = rest & -rest;
                    add(x, s.c, y & ~w);       // decomposition
                    add(x, s.c | w, y & ~w);   // weak union
                }
            }
            // all_ grows while we scan; newly added entries meet s again when
            // they are popped themselves.
            const std::size_t known = all_.size();
            for (std::size_t i = 0; i < known; ++i) contract(s, all_[i]);
        }
    }

    const std::vector<Triple>& statements() const { return all_; }

private:
    // X _||_ Y | Z and X _||_ W | Z u Y give X _||_ Y u W | Z.
    void contract_oriented(std::uint32_t x, std::uint32_t z, std::uint32_t y, std::uint32_t x2,
                           std::uint32_t z2, std::uint32_t w) {
        if (x == x2 && z2 == (z | y)) add(x, z, y | w);
    }

    void contract(const Triple& s, const Triple& t) {
        for (const auto& [sx, sy] : {std::pair{s.a, s.b}, std::pair{s.b, s.a}}) {
            for (const auto& [tx, ty] : {std::pair{t.a, t.b}, std::pair{t.b, t.a}}) {
                contract_oriented(sx, s.c, sy, tx, t.c, ty);
                contract_oriented(tx, t.c, ty, sx, s.c, sy);
            }
        }
    }

    std::unordered_set<std::uint32_t> seen_;
    std::vector<Triple> all_;
    std::deque<Triple> pending_;
};

}  // namespace

CiSet semigraphoid_closure(const CiSet& s, std::size_t n, std::size_t cap) {
    if (n > cap || n > kBits) {
        throw Error(ErrorKind::TooManyNodes,
                    std::to_string(n) + " variables exceeds the closure cap of " + std::to_string(std::min<std::size_t>(cap, kBits)));
    }
    Closure engine;
    for (const auto& stmt : s) {
        stmt.check_within(n);
        engine.add(static_cast<std::uint32_t>(stmt.a().mask()), static_cast<std::uint32_t>(stmt.c().mask()),
                   static_cast<std::uint32_t>(stmt.b().mask()));
    }
    engine.run();
    CiSet out;
    for (const auto& t : engine.statements()) {
        out.insert(CiStatement(NodeSet::from_mask(t.a), NodeSet::from_mask(t.c), NodeSet::from_mask(t.b)));
    }
    return out;
}

bool closure_implies(const CiSet& s, const CiStatement& target, std::size_t n, std::size_t cap) {
    target.check_within(n);
    return semigraphoid_closure(s, n, cap).contains(target);
}

}  // namespace bnci
