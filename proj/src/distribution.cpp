#include "bnci/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "bnci/error.hpp"
#include "text_util.hpp"

namespace bnci {

namespace {

std::vector<std::uint64_t> make_strides(const std::vector<Value>& cards) {
    std::uint64_t total = 1;
    for (Value c : cards) {
        if (c == 0) throw Error(ErrorKind::InvalidStatement, "cardinalities must be positive");
        total *= c;
        if (total > kStateGuard) {
            throw Error(ErrorKind::GuardExceeded,
                        "product of cardinalities exceeds 2^24 states");
        }
    }
    std::vector<std::uint64_t> strides(cards.size());
    std::uint64_t s = 1;
    for (std::size_t i = cards.size(); i-- > 0;) {
        strides[i] = s;
        s *= cards[i];
    }
    return strides;
}

std::uint64_t encode(std::span<const Value> values, const std::vector<Value>& cards,
                     const std::vector<std::uint64_t>& strides) {
    if (values.size() != cards.size()) {
        throw Error(ErrorKind::InvalidStatement, "outcome has the wrong number of values");
    }
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= cards[i]) {
            throw Error(ErrorKind::InvalidStatement, "value out of range for variable " + std::to_string(i));
        }
        code += values[i] * strides[i];
    }
    return code;
}

bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_zero(double x) { return x == 0.0; }
bool is_negative(const Rational& q) { return sgn(q) < 0; }
bool is_negative(double x) { return x < 0.0; }

}  // namespace

template <class Mass>
JointDist JointDist::from_codes(std::vector<std::string> labels, std::vector<Value> cards,
                                std::vector<std::pair<std::uint64_t, Mass>> entries, double tolerance) {
    JointDist p;
    if (labels.empty()) labels = index_labels(cards.size());
    if (labels.size() != cards.size()) {
        throw Error(ErrorKind::NodeCountMismatch, "label count differs from variable count");
    }
    p.strides_ = make_strides(cards);
    p.labels_ = std::move(labels);
    p.cards_ = std::move(cards);
    p.tolerance_ = tolerance;

    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Mass> masses;
    Mass total = 0;
    for (std::size_t i = 0; i < entries.size();) {
        const auto code = entries[i].first;
        Mass m = entries[i].second;
        std::size_t j = i + 1;
        for (; j < entries.size() && entries[j].first == code; ++j) m += entries[j].second;
        if constexpr (std::is_same_v<Mass, Rational>) m.canonicalize();
        i = j;
        if (is_negative(m)) throw Error(ErrorKind::NotNormalized, "negative probability mass");
        if (is_zero(m)) continue;
        total += m;
        p.codes_.push_back(code);
        masses.push_back(std::move(m));
    }
    if constexpr (std::is_same_v<Mass, Rational>) {
        if (total != 1) {
            throw Error(ErrorKind::NotNormalized, "masses sum to " + total.get_str() + ", not 1");
        }
    } else {
        if (!(std::abs(total - 1.0) <= tolerance)) {
            throw Error(ErrorKind::NotNormalized, "masses sum to " + std::to_string(total) + ", not 1");
        }
    }
    p.masses_ = std::move(masses);
    return p;
}

template <class Mass>
JointDist JointDist::build(std::vector<std::string> labels, std::vector<Value> cards,
                           std::vector<std::pair<Outcome, Mass>> entries, double tolerance) {
    const auto strides = make_strides(cards);
    std::vector<std::pair<std::uint64_t, Mass>> coded;
    coded.reserve(entries.size());
    for (auto& [outcome, mass] : entries) {
        coded.emplace_back(encode(outcome, cards, strides), std::move(mass));
    }
    return from_codes<Mass>(std::move(labels), std::move(cards), std::move(coded), tolerance);
}

JointDist::JointDist(std::vector<std::string> labels, std::vector<Value> cards,
                     std::vector<std::pair<Outcome, Rational>> entries)
    : JointDist(build<Rational>(std::move(labels), std::move(cards), std::move(entries), 0.0)) {}

JointDist::JointDist(std::vector<std::string> labels, std::vector<Value> cards,
                     std::vector<std::pair<Outcome, double>> entries, double tolerance)
    : JointDist(build<double>(std::move(labels), std::move(cards), std::move(entries), tolerance)) {}

JointDist JointDist::uniform(std::vector<std::string> labels, std::vector<Value> cards) {
    const auto strides = make_strides(cards);
    std::uint64_t total = 1;
    for (Value c : cards) total *= c;
    std::vector<std::pair<std::uint64_t, Rational>> entries;
    entries.reserve(total);
    const Rational each(1, static_cast<unsigned long>(total));
    for (std::uint64_t code = 0; code < total; ++code) entries.emplace_back(code, each);
    return from_codes<Rational>(std::move(labels), std::move(cards), std::move(entries), 0.0);
}

Outcome JointDist::outcome(std::size_t i) const {
    Outcome out(cards_.size());
    const auto code = codes_.at(i);
    for (std::size_t v = 0; v < cards_.size(); ++v) out[v] = static_cast<Value>((code / strides_[v]) % cards_[v]);
    return out;
}

Value JointDist::value(std::size_t i, NodeId var) const {
    return static_cast<Value>((codes_[i] / strides_[var]) % cards_[var]);
}

double JointDist::mass_as_double(std::size_t i) const {
    if (const auto* q = std::get_if<std::vector<Rational>>(&masses_)) return (*q)[i].get_d();
    return std::get<std::vector<double>>(masses_)[i];
}

const std::vector<Rational>& JointDist::exact_masses() const {
    if (const auto* q = std::get_if<std::vector<Rational>>(&masses_)) return *q;
    throw Error(ErrorKind::InvalidStatement, "distribution is in approximate mode");
}

const std::vector<double>& JointDist::approx_masses() const {
    if (const auto* d = std::get_if<std::vector<double>>(&masses_)) return *d;
    throw Error(ErrorKind::InvalidStatement, "distribution is in exact mode");
}

double JointDist::probability(std::span<const Value> outcome) const {
    const auto code = encode(outcome, cards_, strides_);
    const auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return 0.0;
    return mass_as_double(static_cast<std::size_t>(it - codes_.begin()));
}

Rational JointDist::exact_probability(std::span<const Value> outcome) const {
    const auto& masses = exact_masses();
    const auto code = encode(outcome, cards_, strides_);
    const auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return 0;
    return masses[static_cast<std::size_t>(it - codes_.begin())];
}

JointDist JointDist::to_approximate(double tolerance) const {
    JointDist p = *this;
    p.tolerance_ = tolerance;
    if (const auto* q = std::get_if<std::vector<Rational>>(&masses_)) {
        std::vector<double> d;
        d.reserve(q->size());
        for (const auto& m : *q) d.push_back(m.get_d());
        p.masses_ = std::move(d);
    }
    return p;
}

JointDist JointDist::push_forward(std::vector<std::string> labels, std::vector<Value> cards,
                                  const OutcomeMap& f) const {
    const auto strides = make_strides(cards);
    Outcome in(cards_.size());
    Outcome out(cards.size());
    auto map_code = [&](std::size_t i) {
        for (std::size_t v = 0; v < cards_.size(); ++v) in[v] = value(i, static_cast<NodeId>(v));
        std::fill(out.begin(), out.end(), 0);
        f(in, out);
        return encode(out, cards, strides);
    };
    return std::visit(
        [&](const auto& masses) {
            using Mass = typename std::decay_t<decltype(masses)>::value_type;
            std::vector<std::pair<std::uint64_t, Mass>> entries;
            entries.reserve(codes_.size());
            for (std::size_t i = 0; i < codes_.size(); ++i) entries.emplace_back(map_code(i), masses[i]);
            return from_codes<Mass>(std::move(labels), std::move(cards), std::move(entries), tolerance_);
        },
        masses_);
}

JointDist JointDist::product(const JointDist& other) const {
    std::vector<std::string> labels = labels_;
    labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
    std::vector<Value> cards = cards_;
    cards.insert(cards.end(), other.cards_.begin(), other.cards_.end());
    const auto strides = make_strides(cards);
    std::uint64_t other_states = 1;
    for (Value c : other.cards_) other_states *= c;

    if (exact() && other.exact()) {
        std::vector<std::pair<std::uint64_t, Rational>> entries;
        const auto& lhs = exact_masses();
        const auto& rhs = other.exact_masses();
        entries.reserve(codes_.size() * other.codes_.size());
        for (std::size_t i = 0; i < codes_.size(); ++i) {
            for (std::size_t j = 0; j < other.codes_.size(); ++j) {
                entries.emplace_back(codes_[i] * other_states + other.codes_[j], lhs[i] * rhs[j]);
            }
        }
        return from_codes<Rational>(std::move(labels), std::move(cards), std::move(entries), 0.0);
    }
    std::vector<std::pair<std::uint64_t, double>> entries;
    entries.reserve(codes_.size() * other.codes_.size());
    for (std::size_t i = 0; i < codes_.size(); ++i) {
        for (std::size_t j = 0; j < other.codes_.size(); ++j) {
            entries.emplace_back(codes_[i] * other_states + other.codes_[j],
                                 mass_as_double(i) * other.mass_as_double(j));
        }
    }
    const double tol = std::max(exact() ? 0.0 : tolerance_, other.exact() ? 0.0 : other.tolerance_);
    return from_codes<double>(std::move(labels), std::move(cards), std::move(entries), tol);
}

JointDist JointDist::marginal(const NodeSet& vars) const {
    if (vars.empty()) throw Error(ErrorKind::EmptySet, "marginal over the empty set");
    if (vars.max() >= cards_.size()) throw Error(ErrorKind::InvalidStatement, "variable index out of range");
    std::vector<std::string> labels;
    std::vector<Value> cards;
    for (NodeId v : vars) {
        labels.push_back(labels_[v]);
        cards.push_back(cards_[v]);
    }
    return push_forward(std::move(labels), std::move(cards),
                        [&vars](std::span<const Value> in, std::span<Value> out) {
                            for (std::size_t k = 0; k < vars.size(); ++k) out[k] = in[vars[k]];
                        });
}

bool operator==(const JointDist& a, const JointDist& b) {
    return a.labels_ == b.labels_ && a.cards_ == b.cards_ && a.codes_ == b.codes_ &&
           a.masses_ == b.masses_;
}

std::vector<Rational> exact_pmf(const JointDist& p, NodeId var) {
    const auto& masses = p.exact_masses();
    std::vector<Rational> out(p.cards().at(var));
    for (std::size_t i = 0; i < p.support_size(); ++i) out[p.value(i, var)] += masses[i];
    return out;
}

std::vector<double> pmf(const JointDist& p, NodeId var) {
    std::vector<double> out(p.cards().at(var), 0.0);
    for (std::size_t i = 0; i < p.support_size(); ++i) out[p.value(i, var)] += p.mass_as_double(i);
    return out;
}

namespace {

Rational parse_mass(std::string_view tok, std::size_t line_no) {
    auto fail = [&]() -> Error {
        return Error(ErrorKind::SyntaxError,
                     "bad mass '" + std::string(tok) + "' (line " + std::to_string(line_no) + ")");
    };
    std::string text(tok);
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
            whole.find_first_not_of("0123456789") != std::string::npos) {
            throw fail();
        }
        text = (whole.empty() ? std::string("0") : whole) + frac + "/1" + std::string(frac.size(), '0');
    } else if (text.find_first_not_of("0123456789/") != std::string::npos || text.empty() ||
               text.front() == '/' || text.back() == '/') {
        throw fail();
    }
    Rational q;
    if (q.set_str(text, 10) != 0) throw fail();
    if (sgn(q.get_den()) == 0) throw fail();
    q.canonicalize();
    return q;
}

}  // namespace

JointDist parse_dist(std::string_view text) {
    std::vector<std::string> labels;
    std::vector<Value> cards;
    std::vector<std::pair<Outcome, Rational>> entries;
    bool have_header = false;
    std::size_t line_no = 0;
    for (auto raw : detail::split_lines(text)) {
        ++line_no;
        const auto line = detail::strip_comment(raw);
        if (line.empty()) continue;
        const auto where = " (line " + std::to_string(line_no) + ")";
        if (!have_header) {
            if (!line.starts_with("vars:")) throw Error(ErrorKind::SyntaxError, "expected 'vars:' header" + where);
            for (auto tok : detail::split_tokens(line.substr(5))) {
                const auto colon = tok.rfind(':');
                if (colon == std::string_view::npos) {
                    throw Error(ErrorKind::SyntaxError, "expected <label>:<card>, got '" + std::string(tok) + "'" + where);
                }
                const auto label = tok.substr(0, colon);
                const auto card = detail::parse_int<Value>(tok.substr(colon + 1));
                if (!detail::is_valid_label(label) || !card || *card == 0) {
                    throw Error(ErrorKind::SyntaxError, "bad variable '" + std::string(tok) + "'" + where);
                }
                if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
                    throw Error(ErrorKind::DuplicateLabel, std::string(label) + where);
                }
                labels.emplace_back(label);
                cards.push_back(*card);
            }
            if (labels.empty()) throw Error(ErrorKind::SyntaxError, "no variables declared" + where);
            have_header = true;
            continue;
        }
        auto toks = detail::split_tokens(line);
        if (toks.size() != cards.size() + 1) {
            throw Error(ErrorKind::SyntaxError, "expected " + std::to_string(cards.size()) +
                                                    " values and a mass" + where);
        }
        Outcome o;
        for (std::size_t k = 0; k < cards.size(); ++k) {
            const auto v = detail::parse_int<Value>(toks[k]);
            if (!v || *v >= cards[k]) {
                throw Error(ErrorKind::SyntaxError, "bad value '" + std::string(toks[k]) + "'" + where);
            }
            o.push_back(*v);
        }
        entries.emplace_back(std::move(o), parse_mass(toks.back(), line_no));
    }
    if (!have_header) throw Error(ErrorKind::SyntaxError, "empty distribution file");

    {
        std::vector<Outcome> seen;
        for (const auto& e : entries) seen.push_back(e.first);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
            throw Error(ErrorKind::SyntaxError, "outcome listed twice");
        }
    }
    Rational total = 0;
    for (const auto& e : entries) total += e.second;
    if (total == 1) return JointDist(std::move(labels), std::move(cards), std::move(entries));

    std::vector<std::pair<Outcome, double>> approx;
    approx.reserve(entries.size());
    for (auto& [o, q] : entries) approx.emplace_back(std::move(o), q.get_d());
    return JointDist(std::move(labels), std::move(cards), std::move(approx), kDefaultTolerance);
}

std::string format_dist(const JointDist& p) {
    std::ostringstream os;
    os << "vars:";
    for (std::size_t v = 0; v < p.variable_count(); ++v) os << ' ' << p.labels()[v] << ':' << p.cards()[v];
    os << '\n';
    for (std::size_t i = 0; i < p.support_size(); ++i) {
        const auto o = p.outcome(i);
        for (Value v : o) os << v << ' ';
        Rational q = p.exact() ? p.exact_masses()[i] : Rational(p.approx_masses()[i]);
        os << q.get_num().get_str() << '/' << q.get_den().get_str() << '\n';
    }
    return os.str();
}

}  // namespace bnci
