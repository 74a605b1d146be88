#include "bnci/reduction.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "bnci/error.hpp"
#include "text_util.hpp"

namespace bnci {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInstance, what); }

void check_index(std::uint32_t i, std::uint32_t n, const char* what) {
    if (i < 1 || i > n) invalid(std::string(what) + " index " + std::to_string(i) + " outside 1.." + std::to_string(n));
}

void check_fds(const std::vector<FdEntry>& fds, std::uint32_t n) {
    for (const auto& fd : fds) {
        for (auto i : fd.a) check_index(i, n, "fd");
        check_index(fd.b, n, "fd");
        if (!std::is_sorted(fd.a.begin(), fd.a.end()) ||
            std::adjacent_find(fd.a.begin(), fd.a.end()) != fd.a.end()) {
            invalid("fd determinant list must be sorted and duplicate-free");
        }
        if (std::binary_search(fd.a.begin(), fd.a.end(), fd.b)) {
            invalid("fd dependent " + std::to_string(fd.b) + " is among its determinants");
        }
    }
}

void check_target(const std::optional<FdTarget>& t, std::uint32_t n) {
    if (!t) return;
    check_index(t->a0, n, "target");
    check_index(t->b0, n, "target");
    if (t->a0 == t->b0) invalid("target dependent must differ from its determinant");
}

FdEntry make_fd(std::vector<std::uint32_t> a, std::uint32_t b) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return {std::move(a), b};
}

bool trivial(const FdEntry& fd) { return std::binary_search(fd.a.begin(), fd.a.end(), fd.b); }

// Drops trivial entries and repeats, keeping first occurrences in order.
std::vector<FdEntry> normalize(const std::vector<FdEntry>& raw) {
    std::vector<FdEntry> out;
    std::set<FdEntry> seen;
    for (const auto& fd : raw) {
        if (trivial(fd) || !seen.insert(fd).second) continue;
        out.push_back(fd);
    }
    return out;
}

// Both directions of (lhs) = (rhs), split per component.
void add_equivalence(std::vector<FdEntry>& out, const std::vector<std::uint32_t>& lhs,
                     const std::vector<std::uint32_t>& rhs) {
    for (auto t : lhs) out.push_back(make_fd(rhs, t));
    for (auto s : rhs) out.push_back(make_fd(lhs, s));
}

}  // namespace

void ImplicationAInstance::validate() const {
    if (n < 1) invalid("n must be at least 1");
    check_fds(fds, n);
    for (const auto& [c0, c1] : pairwise) {
        check_index(c0, n, "pairwise");
        check_index(c1, n, "pairwise");
        if (c0 == c1) invalid("pairwise independence needs two distinct variables");
    }
    check_target(target, n);
}

void ImplicationInstance::validate() const {
    if (n < 1) invalid("n must be at least 1");
    for (const auto* group : {&c1, &c2}) {
        for (auto i : *group) check_index(i, n, "group");
        std::vector<std::uint32_t> sorted = *group;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) invalid("group lists an index twice");
    }
    check_fds(fds, n);
    check_target(target, n);
    if (b0_prime) {
        if (!target) invalid("dup requires a target");
        check_index(*b0_prime, n, "dup");
        if (*b0_prime == target->a0 || *b0_prime == target->b0) invalid("dup index must differ from the target indices");
        const FdEntry fwd{{target->b0}, *b0_prime};
        const FdEntry back{{*b0_prime}, target->b0};
        if (std::find(fds.begin(), fds.end(), fwd) == fds.end() || std::find(fds.begin(), fds.end(), back) == fds.end()) {
            invalid("dup requires the fds ({b0}, b0') and ({b0'}, b0)");
        }
    }
    if (!labels.empty()) {
        if (labels.size() != n) invalid("label count differs from n");
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) invalid("duplicate variable label");
    }
}

std::string ImplicationInstance::label(std::uint32_t i) const {
    return labels.empty() ? "V" + std::to_string(i) : labels.at(i - 1);
}

ImplicationAInstance eliminate_pairwise_independence(const ImplicationAInstance& inst) {
    inst.validate();
    if (inst.pairwise.empty()) return inst;
    if (inst.n < 3) invalid("pairwise elimination needs at least three variables");
    ImplicationAInstance out = inst;
    out.pairwise.clear();
    std::vector<FdEntry> raw = inst.fds;
    for (std::size_t j = 0; j < inst.pairwise.size(); ++j) {
        const auto [c0, c1] = inst.pairwise[j];
        const auto y = inst.n + static_cast<std::uint32_t>(j) + 1;
        add_equivalence(raw, {c0, c1, y}, {1, 2, 3});
    }
    out.n = inst.n + static_cast<std::uint32_t>(inst.pairwise.size());
    out.fds = normalize(raw);
    return out;
}

std::vector<std::string> ImplicationBLayout::labels() const {
    std::vector<std::string> out{"Q"};
    for (std::uint32_t i = 1; i <= 3 * n; ++i) out.push_back("V" + std::to_string(i));
    for (std::uint32_t i = 1; i <= 3 * n + 1; ++i) out.push_back("W" + std::to_string(i));
    for (std::uint32_t i = 1; i <= 3 * n; ++i) out.push_back("M" + std::to_string(i));
    return out;
}

std::vector<FdEntry> implication_b_fd_expansion(const ImplicationAInstance& inst) {
    inst.validate();
    const ImplicationBLayout L{inst.n};
    const auto n3 = 3 * inst.n;
    std::vector<FdEntry> out;
    for (std::uint32_t i = 1; i <= n3; ++i) {
        out.push_back(make_fd({L.w(i + 1), L.m(i)}, L.w(i)));
        out.push_back(make_fd({L.w(i), L.m(i)}, L.w(i + 1)));
    }
    out.push_back(make_fd({L.w(n3 + 1), L.q()}, L.w(1)));
    for (std::uint32_t i = 1; i <= 3; ++i) add_equivalence(out, {L.v(i)}, {L.w(i)});
    for (std::uint32_t i = 1; i <= n3; ++i) out.push_back(make_fd({L.v(1), L.v(2), L.v(3)}, L.v(i)));
    for (std::uint32_t i = 1; i <= n3; ++i) out.push_back(make_fd({L.w(i), L.q()}, L.v(i)));
    for (std::uint32_t i = 1; i <= inst.n; ++i) {
        add_equivalence(out, {L.v(1), L.v(2), L.v(3)}, {L.v(i), L.v(i + inst.n), L.v(i + 2 * inst.n)});
    }
    for (const auto& fd : inst.fds) {
        std::vector<std::uint32_t> a;
        for (auto i : fd.a) a.push_back(L.v(i));
        out.push_back(make_fd(std::move(a), L.v(fd.b)));
    }
    return out;
}

ImplicationInstance build_implication_b(const ImplicationAInstance& inst) {
    inst.validate();
    if (!inst.pairwise.empty()) invalid("eliminate pairwise independencies before building Implication B");
    const ImplicationBLayout L{inst.n};
    ImplicationInstance out;
    out.n = L.size();
    out.c1 = {L.q(), L.v(1), L.v(2), L.v(3)};
    for (std::uint32_t i = 1; i <= 3 * inst.n; ++i) out.c2.push_back(L.m(i));
    out.c2.push_back(L.w(3 * inst.n + 1));
    out.fds = normalize(implication_b_fd_expansion(inst));
    if (inst.target) out.target = FdTarget{L.v(inst.target->a0), L.v(inst.target->b0)};
    out.labels = L.labels();
    out.validate();
    return out;
}

ImplicationInstance duplicate_target_variable(const ImplicationInstance& inst) {
    inst.validate();
    if (inst.b0_prime) throw Error(ErrorKind::AlreadyDuplicated, "instance already has a duplicated target variable");
    if (!inst.target) invalid("instance has no target to duplicate");
    ImplicationInstance out = inst;
    const auto fresh = inst.n + 1;
    out.n = fresh;
    out.fds.push_back({{inst.target->b0}, fresh});
    out.fds.push_back({{fresh}, inst.target->b0});
    out.b0_prime = fresh;
    if (!out.labels.empty()) {
        std::string name = out.labels[inst.target->b0 - 1] + "_dup";
        while (std::find(out.labels.begin(), out.labels.end(), name) != out.labels.end()) name += "_";
        out.labels.push_back(std::move(name));
    }
    out.validate();
    return out;
}

std::string Role::label() const {
    switch (kind) {
        case Kind::U: return "U_" + std::to_string(i);
        case Kind::Y: return "Y_" + std::to_string(i);
        case Kind::X: return "X_" + std::to_string(i) + "^" + std::to_string(j);
        case Kind::Z: return "Z_" + std::to_string(i);
    }
    return "?";
}

std::vector<Role> RoleLayout::roles() const {
    std::vector<Role> out(size());
    for (std::uint32_t i = 1; i <= n; ++i) {
        out[u(i)] = {Role::Kind::U, i, 0};
        out[y(i)] = {Role::Kind::Y, i, 0};
        for (std::uint32_t j = 1; j <= k; ++j) out[x(i, j)] = {Role::Kind::X, i, j};
        out[z(i)] = {Role::Kind::Z, i, 0};
    }
    return out;
}

ReductionOutput compile_two_networks(const ImplicationInstance& inst) {
    inst.validate();
    if (!inst.target) invalid("instance has no target");
    if (!inst.b0_prime) throw Error(ErrorKind::MissingDuplicate, "compile needs a duplicated target variable (dup)");
    const auto n = inst.n;
    const auto k = static_cast<std::uint32_t>(inst.fds.size());
    const RoleLayout L{n, k};
    const auto roles = L.roles();
    std::vector<std::string> labels;
    labels.reserve(roles.size());
    for (const auto& r : roles) labels.push_back(r.label());

    auto group_edges = [&](const std::vector<std::uint32_t>& group, std::vector<Edge>& edges) {
        std::vector<char> in(n + 1, 0);
        for (auto i : group) in[i] = 1;
        for (std::uint32_t i = 1; i <= n; ++i) {
            for (std::uint32_t i2 = 1; i2 <= n; ++i2) {
                if (in[i2]) continue;
                if (in[i] || i < i2) edges.emplace_back(L.u(i), L.u(i2));
            }
        }
    };

    std::vector<Edge> e1;
    group_edges(inst.c1, e1);
    for (std::uint32_t i = 1; i <= n; ++i) {
        std::vector<NodeId> chain{L.u(i), L.y(i)};
        for (std::uint32_t j = 1; j <= k; ++j) chain.push_back(L.x(i, j));
        chain.push_back(L.z(i));
        for (std::size_t s = 0; s + 1 < chain.size(); ++s) e1.emplace_back(chain[s], chain[s + 1]);
    }

    std::vector<Edge> e2;
    group_edges(inst.c2, e2);
    for (std::uint32_t i = 1; i <= n; ++i) {
        e2.emplace_back(L.u(i), L.z(i));
        e2.emplace_back(L.z(i), L.y(i));
    }
    for (std::uint32_t j = 1; j <= k; ++j) {
        const auto& fd = inst.fds[j - 1];
        for (std::uint32_t i = 1; i <= n; ++i) {
            if (i != fd.b) e2.emplace_back(L.u(i), L.x(i, j));
        }
        for (auto i : fd.a) e2.emplace_back(L.x(i, j), L.x(fd.b, j));
    }

    const auto& t = *inst.target;
    return ReductionOutput{Dag(L.size(), std::move(e1), labels), Dag(L.size(), std::move(e2), labels),
                           CiStatement(NodeSet{L.y(t.b0)}, NodeSet{L.y(t.a0)}, NodeSet{L.y(*inst.b0_prime)}),
                           roles};
}

namespace {

std::vector<std::uint32_t> parse_indices(std::string_view s, const std::string& where) {
    std::vector<std::uint32_t> out;
    for (auto tok : detail::split_tokens(s)) {
        const auto v = detail::parse_int<std::uint32_t>(tok);
        if (!v) throw Error(ErrorKind::SyntaxError, "expected an index, got '" + std::string(tok) + "'" + where);
        out.push_back(*v);
    }
    return out;
}

std::pair<std::vector<std::uint32_t>, std::uint32_t> parse_arrow(std::string_view s, const std::string& where) {
    const auto arrow = s.find("->");
    if (arrow == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "expected '<indices> -> <index>'" + where);
    auto lhs = parse_indices(s.substr(0, arrow), where);
    const auto rhs = parse_indices(s.substr(arrow + 2), where);
    if (rhs.size() != 1) throw Error(ErrorKind::SyntaxError, "expected a single index after '->'" + where);
    return {std::move(lhs), rhs.front()};
}

std::string join(const std::vector<std::uint32_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
    return out;
}

void write_fds(std::ostringstream& os, const std::vector<FdEntry>& fds) {
    for (const auto& fd : fds) {
        os << "fd " << join(fd.a) << (fd.a.empty() ? "" : " ") << "-> " << fd.b << '\n';
    }
}

}  // namespace

AnyInstance parse_instance(std::string_view text) {
    bool form_a = false;
    std::optional<std::uint32_t> n;
    std::vector<std::uint32_t> c1, c2;
    std::vector<FdEntry> fds;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairwise;
    std::optional<FdTarget> target;
    std::optional<std::uint32_t> dup;
    std::vector<std::string> labels;
    bool saw_group = false;
    std::size_t line_no = 0;
    for (auto raw : detail::split_lines(text)) {
        ++line_no;
        const auto line = detail::strip_comment(raw);
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        const auto space = line.find_first_of(" \t");
        const auto keyword = line.substr(0, space);
        const auto rest = space == std::string_view::npos ? std::string_view{} : detail::trim(line.substr(space));
        if (keyword == "form") {
            if (rest == "implication-a") {
                form_a = true;
            } else if (rest != "groups") {
                throw Error(ErrorKind::SyntaxError, "unknown form '" + std::string(rest) + "'" + where);
            }
        } else if (keyword == "n") {
            const auto v = detail::parse_int<std::uint32_t>(rest);
            if (!v) throw Error(ErrorKind::SyntaxError, "bad n" + where);
            n = *v;
        } else if (keyword == "group1") {
            c1 = parse_indices(rest, where);
            saw_group = true;
        } else if (keyword == "group2") {
            c2 = parse_indices(rest, where);
            saw_group = true;
        } else if (keyword == "fd") {
            auto [a, b] = parse_arrow(rest, where);
            fds.push_back(make_fd(std::move(a), b));
        } else if (keyword == "pairwise") {
            const auto v = parse_indices(rest, where);
            if (v.size() != 2) throw Error(ErrorKind::SyntaxError, "pairwise takes two indices" + where);
            pairwise.emplace_back(v[0], v[1]);
        } else if (keyword == "target") {
            auto [a, b] = parse_arrow(rest, where);
            if (a.size() != 1) throw Error(ErrorKind::SyntaxError, "target needs a single determinant" + where);
            target = FdTarget{a.front(), b};
        } else if (keyword == "dup") {
            const auto v = detail::parse_int<std::uint32_t>(rest);
            if (!v) throw Error(ErrorKind::SyntaxError, "bad dup index" + where);
            dup = *v;
        } else if (keyword == "labels") {
            for (auto tok : detail::split_tokens(rest)) {
                if (!detail::is_valid_label(tok)) throw Error(ErrorKind::SyntaxError, "invalid label" + where);
                labels.emplace_back(tok);
            }
        } else {
            throw Error(ErrorKind::SyntaxError, "unknown keyword '" + std::string(keyword) + "'" + where);
        }
    }
    if (!n) throw Error(ErrorKind::SyntaxError, "instance has no 'n' line");
    if (form_a) {
        if (saw_group || dup || !labels.empty()) {
            throw Error(ErrorKind::SyntaxError, "group, dup and labels lines do not apply to the implication-a form");
        }
        ImplicationAInstance inst{*n, std::move(fds), std::move(pairwise), target};
        inst.validate();
        return inst;
    }
    if (!pairwise.empty()) throw Error(ErrorKind::SyntaxError, "pairwise lines need 'form implication-a'");
    ImplicationInstance inst{*n, std::move(c1), std::move(c2), std::move(fds), target, dup, std::move(labels)};
    inst.validate();
    return inst;
}

std::string format_instance(const ImplicationInstance& inst) {
    std::ostringstream os;
    os << "n " << inst.n << '\n';
    if (!inst.labels.empty()) {
        os << "labels";
        for (const auto& l : inst.labels) os << ' ' << l;
        os << '\n';
    }
    os << "group1 " << join(inst.c1) << '\n';
    os << "group2 " << join(inst.c2) << '\n';
    write_fds(os, inst.fds);
    if (inst.target) os << "target " << inst.target->a0 << " -> " << inst.target->b0 << '\n';
    if (inst.b0_prime) os << "dup " << *inst.b0_prime << '\n';
    return os.str();
}

std::string format_instance(const ImplicationAInstance& inst) {
    std::ostringstream os;
    os << "form implication-a\n";
    os << "n " << inst.n << '\n';
    write_fds(os, inst.fds);
    for (const auto& [c0, c1] : inst.pairwise) os << "pairwise " << c0 << ' ' << c1 << '\n';
    if (inst.target) os << "target " << inst.target->a0 << " -> " << inst.target->b0 << '\n';
    return os.str();
}

}  // namespace bnci
