#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "pconn/errors.hpp"

namespace pconn {

/// The supported deck-transformation group kinds. Each kind comes with a
/// decidable normal form, so element equality is always exact:
///
///   finite          -- explicit multiplication table over named elements
///   free_abelian    -- Z^n, normal form = exponent vector
///   free_group      -- free group of rank n, normal form = reduced word
///   infinite_cyclic -- Z, normal form = single exponent
///   klein_bottle    -- <a, b | ab = b^-1 a>, normal form b^n a^m
enum class GroupKind {
    finite,
    free_abelian,
    free_group,
    infinite_cyclic,
    klein_bottle,
};

inline std::string to_string(GroupKind k)
{
    switch (k) {
    case GroupKind::finite: return "finite";
    case GroupKind::free_abelian: return "free_abelian";
    case GroupKind::free_group: return "free";
    case GroupKind::infinite_cyclic: return "infinite_cyclic";
    case GroupKind::klein_bottle: return "klein_bottle";
    }
    return "?";
}

inline GroupKind group_kind_from_string(const std::string& s)
{
    if (s == "finite") return GroupKind::finite;
    if (s == "free_abelian") return GroupKind::free_abelian;
    if (s == "free") return GroupKind::free_group;
    if (s == "infinite_cyclic") return GroupKind::infinite_cyclic;
    if (s == "klein_bottle") return GroupKind::klein_bottle;
    throw schema_error("unknown group kind '" + s + "'");
}

class DeckGroup;
using DeckGroupPtr = std::shared_ptr<const DeckGroup>;

/// A group element in canonical normal form. The encoding of the
/// normal-form vector depends on the group kind:
///
///   finite          : { element index }
///   infinite_cyclic : { exponent }
///   free_abelian    : one exponent per generator
///   klein_bottle    : { n, m } meaning b^n a^m
///   free_group      : flattened syllables { g0, e0, g1, e1, ... } with
///                     adjacent generator indices distinct and exponents
///                     nonzero
class GroupElement {
public:
    GroupElement() = default;

    const DeckGroupPtr& group() const { return group_; }
    const std::vector<long long>& normal_form() const { return nf_; }
    bool valid() const { return group_ != nullptr; }
    bool is_identity() const;

    friend bool operator==(const GroupElement& x, const GroupElement& y);
    friend bool operator!=(const GroupElement& x, const GroupElement& y)
    {
        return !(x == y);
    }

private:
    friend class DeckGroup;
    GroupElement(DeckGroupPtr g, std::vector<long long> nf)
        : group_(std::move(g)), nf_(std::move(nf))
    {
    }

    DeckGroupPtr group_;
    std::vector<long long> nf_;
};

/// Canonical total order on elements of one group; usable as a map
/// comparator and as the deterministic term order when printing group-ring
/// values.
struct GroupElementLess {
    bool operator()(const GroupElement& x, const GroupElement& y) const;
};

class DeckGroup : public std::enable_shared_from_this<DeckGroup> {
public:
    // -- factories -----------------------------------------------------

    /// Finite group from a multiplication table. `table[i][j]` is the index
    /// of elements[i]*elements[j]. The table is validated on construction:
    /// closure, associativity, identity and inverses.
    static DeckGroupPtr finite(std::vector<std::string> elements,
                               std::vector<std::vector<int>> table,
                               std::vector<std::string> generators = {});

    static DeckGroupPtr free_abelian(int rank,
                                     std::vector<std::string> names = {});

    static DeckGroupPtr free_group(int rank,
                                   std::vector<std::string> names = {});

    static DeckGroupPtr infinite_cyclic(std::string name = "t");

    /// Klein bottle group <a, b | ab = b^-1 a>. Normal form b^n a^m with
    /// multiplication (b^n a^m)(b^q a^p) = b^{n + (-1)^m q} a^{m + p}.
    static DeckGroupPtr klein_bottle(std::string a_name = "a",
                                     std::string b_name = "b");

    // -- structure -----------------------------------------------------

    GroupKind kind() const { return kind_; }
    int rank() const { return rank_; }
    const std::vector<std::string>& generator_names() const
    {
        return generator_names_;
    }
    const std::vector<std::string>& element_names() const
    {
        return element_names_;
    }
    std::size_t order() const { return element_names_.size(); }
    bool structurally_equal(const DeckGroup& other) const;

    // -- elements ------------------------------------------------------

    GroupElement identity() const;
    GroupElement generator(int i) const;
    /// All elements, canonical order. Finite kind only.
    std::vector<GroupElement> elements() const;

    GroupElement mul(const GroupElement& x, const GroupElement& y) const;
    GroupElement inverse(const GroupElement& x) const;
    GroupElement pow(const GroupElement& x, long long e) const;

    /// Canonical comparison: <0, 0, >0. Total, deterministic, and used as
    /// the term order for printing.
    int compare(const GroupElement& x, const GroupElement& y) const;

    std::string to_string(const GroupElement& x) const;

    // -- normal-form constructors ---------------------------------------

    /// Validates the kind-specific encoding; throws schema_error on a
    /// malformed vector.
    GroupElement from_normal_form(std::vector<long long> nf) const;

    /// Parses a whitespace-separated word in the generators, tokens of the
    /// form `a`, `a^3`, `b^-1`. The empty word, "1" and "e" denote the
    /// identity. For finite groups tokens may also name arbitrary table
    /// elements.
    GroupElement element_from_word(const std::string& word) const;

    GroupElement finite_element(const std::string& name) const;
    GroupElement cyclic_element(long long exponent) const;
    /// Throws "group mismatch" unless x belongs to this group (or to a
    /// structurally equal one).
    void require_same(const GroupElement& x) const;
    GroupElement abelian_element(std::vector<long long> exponents) const;
    GroupElement klein_element(long long b_exp, long long a_exp) const;

private:
    DeckGroup() = default;

    GroupElement make(std::vector<long long> nf) const
    {
        return GroupElement(shared_from_this(), std::move(nf));
    }
    int generator_index(const std::string& name) const;
    void validate_table();

    GroupKind kind_ = GroupKind::infinite_cyclic;
    int rank_ = 1;
    std::vector<std::string> generator_names_;
    // finite kind only:
    std::vector<std::string> element_names_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int identity_index_ = 0;
};

inline void require_same_group(const GroupElement& x, const GroupElement& y)
{
    if (!x.valid() || !y.valid() || x.group() == y.group())
        return;
    if (!x.group()->structurally_equal(*y.group()))
        throw validation_error("group mismatch");
}

// ---------------------------------------------------------------------
// implementation
// ---------------------------------------------------------------------

inline bool GroupElement::is_identity() const
{
    return valid() && *this == group_->identity();
}

inline bool operator==(const GroupElement& x, const GroupElement& y)
{
    if (!x.valid() || !y.valid())
        return x.valid() == y.valid();
    require_same_group(x, y);
    return x.nf_ == y.nf_;
}

inline bool GroupElementLess::operator()(const GroupElement& x,
                                         const GroupElement& y) const
{
    return x.group()->compare(x, y) < 0;
}

inline DeckGroupPtr DeckGroup::finite(std::vector<std::string> elements,
                                      std::vector<std::vector<int>> table,
                                      std::vector<std::string> generators)
{
    auto g = std::shared_ptr<DeckGroup>(new DeckGroup());
    g->kind_ = GroupKind::finite;
    g->rank_ = 0;
    g->element_names_ = std::move(elements);
    g->table_ = std::move(table);
    g->generator_names_ = std::move(generators);
    g->validate_table();
    if (g->generator_names_.empty()) {
        for (std::size_t i = 0; i < g->element_names_.size(); ++i)
            if (static_cast<int>(i) != g->identity_index_)
                g->generator_names_.push_back(g->element_names_[i]);
    }
    for (const auto& name : g->generator_names_)
        g->finite_element(name); // existence check
    return g;
}

inline DeckGroupPtr DeckGroup::free_abelian(int rank,
                                            std::vector<std::string> names)
{
    if (rank < 1)
        throw schema_error("free_abelian rank must be positive");
    auto g = std::shared_ptr<DeckGroup>(new DeckGroup());
    g->kind_ = GroupKind::free_abelian;
    g->rank_ = rank;
    g->generator_names_ = std::move(names);
    if (g->generator_names_.empty())
        for (int i = 0; i < rank; ++i)
            g->generator_names_.push_back("x" + std::to_string(i + 1));
    if (static_cast<int>(g->generator_names_.size()) != rank)
        throw schema_error("generator name count does not match rank");
    return g;
}

inline DeckGroupPtr DeckGroup::free_group(int rank,
                                          std::vector<std::string> names)
{
    if (rank < 1)
        throw schema_error("free rank must be positive");
    auto g = std::shared_ptr<DeckGroup>(new DeckGroup());
    g->kind_ = GroupKind::free_group;
    g->rank_ = rank;
    g->generator_names_ = std::move(names);
    if (g->generator_names_.empty())
        for (int i = 0; i < rank; ++i)
            g->generator_names_.push_back("x" + std::to_string(i + 1));
    if (static_cast<int>(g->generator_names_.size()) != rank)
        throw schema_error("generator name count does not match rank");
    return g;
}

inline DeckGroupPtr DeckGroup::infinite_cyclic(std::string name)
{
    auto g = std::shared_ptr<DeckGroup>(new DeckGroup());
    g->kind_ = GroupKind::infinite_cyclic;
    g->rank_ = 1;
    g->generator_names_ = {std::move(name)};
    return g;
}

inline DeckGroupPtr DeckGroup::klein_bottle(std::string a_name,
                                            std::string b_name)
{
    auto g = std::shared_ptr<DeckGroup>(new DeckGroup());
    g->kind_ = GroupKind::klein_bottle;
    g->rank_ = 2;
    g->generator_names_ = {std::move(a_name), std::move(b_name)};
    return g;
}

inline void DeckGroup::validate_table()
{
    const std::size_t n = element_names_.size();
    if (n == 0)
        throw schema_error("finite group needs at least one element");
    if (table_.size() != n)
        throw schema_error("multiplication table is not square");
    for (const auto& row : table_) {
        if (row.size() != n)
            throw schema_error("multiplication table is not square");
        for (int v : row)
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                throw schema_error("multiplication table is not closed");
    }
    // identity
    int id = -1;
    for (std::size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (std::size_t x = 0; x < n; ++x)
            ok = ok && table_[e][x] == static_cast<int>(x) &&
                 table_[x][e] == static_cast<int>(x);
        if (ok) {
            id = static_cast<int>(e);
            break;
        }
    }
    if (id < 0)
        throw validation_error("finite group table has no identity");
    identity_index_ = id;
    // inverses
    inverse_.assign(n, -1);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y)
            if (table_[x][y] == id && table_[y][x] == id)
                inverse_[x] = static_cast<int>(y);
        if (inverse_[x] < 0)
            throw validation_error("finite group table lacks an inverse for '" +
                                   element_names_[x] + "'");
    }
    // associativity
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
                    throw validation_error(
                        "finite group table is not associative");
}

inline bool DeckGroup::structurally_equal(const DeckGroup& other) const
{
    return kind_ == other.kind_ && rank_ == other.rank_ &&
           generator_names_ == other.generator_names_ &&
           element_names_ == other.element_names_ && table_ == other.table_;
}

inline GroupElement DeckGroup::identity() const
{
    switch (kind_) {
    case GroupKind::finite:
        return make({static_cast<long long>(identity_index_)});
    case GroupKind::infinite_cyclic:
        return make({0});
    case GroupKind::free_abelian:
        return make(std::vector<long long>(rank_, 0));
    case GroupKind::klein_bottle:
        return make({0, 0});
    case GroupKind::free_group:
        return make({});
    }
    throw error("unreachable");
}

inline GroupElement DeckGroup::generator(int i) const
{
    if (i < 0 || i >= static_cast<int>(generator_names_.size()))
        throw schema_error("generator index out of range");
    switch (kind_) {
    case GroupKind::finite:
        return finite_element(generator_names_[i]);
    case GroupKind::infinite_cyclic:
        return make({1});
    case GroupKind::free_abelian: {
        std::vector<long long> nf(rank_, 0);
        nf[i] = 1;
        return make(nf);
    }
    case GroupKind::klein_bottle:
        // generators are (a, b); a = b^0 a^1, b = b^1 a^0
        return i == 0 ? make({0, 1}) : make({1, 0});
    case GroupKind::free_group:
        return make({i, 1});
    }
    throw error("unreachable");
}

inline std::vector<GroupElement> DeckGroup::elements() const
{
    if (kind_ != GroupKind::finite)
        throw validation_error("element enumeration requires a finite group");
    std::vector<GroupElement> out;
    out.reserve(order());
    for (std::size_t i = 0; i < order(); ++i)
        out.push_back(make({static_cast<long long>(i)}));
    return out;
}

inline void DeckGroup::require_same(const GroupElement& x) const
{
    if (!x.valid() || !(x.group().get() == this ||
                        x.group()->structurally_equal(*this)))
        throw validation_error("group mismatch");
}

inline GroupElement DeckGroup::mul(const GroupElement& x,
                                   const GroupElement& y) const
{
    require_same(x);
    require_same(y);
    const auto& a = x.normal_form();
    const auto& b = y.normal_form();
    switch (kind_) {
    case GroupKind::finite:
        return make({static_cast<long long>(
            table_[static_cast<std::size_t>(a[0])]
                  [static_cast<std::size_t>(b[0])])});
    case GroupKind::infinite_cyclic:
        return make({a[0] + b[0]});
    case GroupKind::free_abelian: {
        std::vector<long long> nf(rank_);
        for (int i = 0; i < rank_; ++i)
            nf[i] = a[i] + b[i];
        return make(nf);
    }
    case GroupKind::klein_bottle: {
        // (b^n a^m)(b^q a^p) = b^{n + (-1)^m q} a^{m + p}
        const long long n = a[0], m = a[1], q = b[0], p = b[1];
        const long long sign = (m % 2 == 0) ? 1 : -1;
        return make({n + sign * q, m + p});
    }
    case GroupKind::free_group: {
        std::vector<long long> nf = a;
        for (std::size_t i = 0; i < b.size(); i += 2) {
            long long gen = b[i], exp = b[i + 1];
            if (!nf.empty() && nf[nf.size() - 2] == gen) {
                nf.back() += exp;
                if (nf.back() == 0) {
                    nf.pop_back();
                    nf.pop_back();
                }
            } else {
                nf.push_back(gen);
                nf.push_back(exp);
            }
        }
        return make(nf);
    }
    }
    throw error("unreachable");
}

inline GroupElement DeckGroup::inverse(const GroupElement& x) const
{
    require_same(x);
    const auto& a = x.normal_form();
    switch (kind_) {
    case GroupKind::finite:
        return make({static_cast<long long>(
            inverse_[static_cast<std::size_t>(a[0])])});
    case GroupKind::infinite_cyclic:
        return make({-a[0]});
    case GroupKind::free_abelian: {
        std::vector<long long> nf(rank_);
        for (int i = 0; i < rank_; ++i)
            nf[i] = -a[i];
        return make(nf);
    }
    case GroupKind::klein_bottle: {
        const long long n = a[0], m = a[1];
        return make({(m % 2 == 0) ? -n : n, -m});
    }
    case GroupKind::free_group: {
        std::vector<long long> nf;
        nf.reserve(a.size());
        for (std::size_t i = a.size(); i >= 2; i -= 2) {
            nf.push_back(a[i - 2]);
            nf.push_back(-a[i - 1]);
        }
        return make(nf);
    }
    }
    throw error("unreachable");
}

inline GroupElement DeckGroup::pow(const GroupElement& x, long long e) const
{
    require_same(x);
    if (e == 0)
        return identity();
    GroupElement base = e < 0 ? inverse(x) : x;
    unsigned long long n = e < 0 ? -static_cast<unsigned long long>(e) : e;
    GroupElement acc = identity();
    while (n > 0) {
        if (n & 1)
            acc = mul(acc, base);
        base = mul(base, base);
        n >>= 1;
    }
    return acc;
}

inline int DeckGroup::compare(const GroupElement& x,
                              const GroupElement& y) const
{
    require_same(x);
    require_same(y);
    const auto& a = x.normal_form();
    const auto& b = y.normal_form();
    auto cmp = [](long long u, long long v) { return u < v ? -1 : (u > v ? 1 : 0); };
    switch (kind_) {
    case GroupKind::finite:
    case GroupKind::infinite_cyclic:
        return cmp(a[0], b[0]);
    case GroupKind::free_abelian:
        for (int i = 0; i < rank_; ++i)
            if (int c = cmp(a[i], b[i]))
                return c;
        return 0;
    case GroupKind::klein_bottle:
        // order by a-exponent, then b-exponent, so e < b < a as in the
        // usual presentation order
        if (int c = cmp(a[1], b[1]))
            return c;
        return cmp(a[0], b[0]);
    case GroupKind::free_group: {
        long long la = 0, lb = 0;
        for (std::size_t i = 1; i < a.size(); i += 2)
            la += a[i] < 0 ? -a[i] : a[i];
        for (std::size_t i = 1; i < b.size(); i += 2)
            lb += b[i] < 0 ? -b[i] : b[i];
        if (int c = cmp(la, lb))
            return c;
        if (a.size() != b.size())
            return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (int c = cmp(a[i], b[i]))
                return c;
        return 0;
    }
    }
    throw error("unreachable");
}

namespace detail {

inline void append_power(std::ostream& os, const std::string& name,
                         long long exp, bool& first)
{
    if (exp == 0)
        return;
    if (!first)
        os << ' ';
    first = false;
    os << name;
    if (exp != 1)
        os << '^' << exp;
}

} // namespace detail

inline std::string DeckGroup::to_string(const GroupElement& x) const
{
    require_same(x);
    const auto& a = x.normal_form();
    switch (kind_) {
    case GroupKind::finite:
        return element_names_[static_cast<std::size_t>(a[0])];
    case GroupKind::infinite_cyclic: {
        if (a[0] == 0)
            return "1";
        std::ostringstream os;
        bool first = true;
        detail::append_power(os, generator_names_[0], a[0], first);
        return os.str();
    }
    case GroupKind::free_abelian: {
        std::ostringstream os;
        bool first = true;
        for (int i = 0; i < rank_; ++i)
            detail::append_power(os, generator_names_[i], a[i], first);
        return first ? "1" : os.str();
    }
    case GroupKind::klein_bottle: {
        std::ostringstream os;
        bool first = true;
        detail::append_power(os, generator_names_[1], a[0], first); // b part
        detail::append_power(os, generator_names_[0], a[1], first); // a part
        return first ? "1" : os.str();
    }
    case GroupKind::free_group: {
        if (a.empty())
            return "1";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < a.size(); i += 2)
            detail::append_power(
                os, generator_names_[static_cast<std::size_t>(a[i])], a[i + 1],
                first);
        return os.str();
    }
    }
    throw error("unreachable");
}

inline GroupElement DeckGroup::from_normal_form(std::vector<long long> nf) const
{
    switch (kind_) {
    case GroupKind::finite:
        if (nf.size() != 1 || nf[0] < 0 ||
            static_cast<std::size_t>(nf[0]) >= order())
            throw schema_error("invalid finite-group normal form");
        break;
    case GroupKind::infinite_cyclic:
        if (nf.size() != 1)
            throw schema_error("invalid infinite-cyclic normal form");
        break;
    case GroupKind::free_abelian:
        if (static_cast<int>(nf.size()) != rank_)
            throw schema_error("invalid free-abelian normal form");
        break;
    case GroupKind::klein_bottle:
        if (nf.size() != 2)
            throw schema_error("invalid klein-bottle normal form");
        break;
    case GroupKind::free_group: {
        if (nf.size() % 2 != 0)
            throw schema_error("invalid free-group normal form");
        for (std::size_t i = 0; i < nf.size(); i += 2) {
            if (nf[i] < 0 || nf[i] >= rank_ || nf[i + 1] == 0)
                throw schema_error("invalid free-group normal form");
            if (i + 2 < nf.size() && nf[i] == nf[i + 2])
                throw schema_error("free-group word is not reduced");
        }
        break;
    }
    }
    return make(std::move(nf));
}

inline int DeckGroup::generator_index(const std::string& name) const
{
    for (std::size_t i = 0; i < generator_names_.size(); ++i)
        if (generator_names_[i] == name)
            return static_cast<int>(i);
    return -1;
}

inline GroupElement DeckGroup::element_from_word(const std::string& word) const
{
    GroupElement acc = identity();
    std::istringstream is(word);
    std::string token;
    while (is >> token) {
        if (token == "1" || token == "e")
            continue;
        std::string name = token;
        long long exp = 1;
        if (auto caret = token.find('^'); caret != std::string::npos) {
            name = token.substr(0, caret);
            try {
                exp = std::stoll(token.substr(caret + 1));
            } catch (const std::exception&) {
                throw schema_error("bad exponent in word token '" + token +
                                   "'");
            }
        }
        GroupElement g;
        if (int gi = generator_index(name); gi >= 0)
            g = generator(gi);
        else if (kind_ == GroupKind::finite)
            g = finite_element(name);
        else
            throw schema_error("unknown generator '" + name + "'");
        acc = mul(acc, pow(g, exp));
    }
    return acc;
}

inline GroupElement DeckGroup::finite_element(const std::string& name) const
{
    if (kind_ != GroupKind::finite)
        throw schema_error("named elements require a finite group");
    for (std::size_t i = 0; i < element_names_.size(); ++i)
        if (element_names_[i] == name)
            return make({static_cast<long long>(i)});
    throw schema_error("unknown group element '" + name + "'");
}

inline GroupElement DeckGroup::cyclic_element(long long exponent) const
{
    if (kind_ != GroupKind::infinite_cyclic)
        throw schema_error("exponent form requires an infinite cyclic group");
    return make({exponent});
}

inline GroupElement DeckGroup::abelian_element(
    std::vector<long long> exponents) const
{
    if (kind_ != GroupKind::free_abelian)
        throw schema_error("exponent vectors require a free abelian group");
    return from_normal_form(std::move(exponents));
}

inline GroupElement DeckGroup::klein_element(long long b_exp,
                                             long long a_exp) const
{
    if (kind_ != GroupKind::klein_bottle)
        throw schema_error("(b, a) pairs require the klein_bottle group");
    return make({b_exp, a_exp});
}

} // namespace pconn
