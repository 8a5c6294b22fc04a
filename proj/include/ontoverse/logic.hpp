#pragma once

// Logics as entailment systems: a symbol set, sentences, a signature
// function and a decidable entailment relation. Two instances are provided:
// classical propositional logic, and ClassBox, a two-axiom class language
// whose meaning is fixed by translation into propositional logic.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ontoverse/error.hpp"

namespace ontoverse {

using SymbolId = std::string;
using SymbolSet = std::set<SymbolId>;

// Letters, digits and underscore; first character a letter.
inline bool is_identifier(std::string_view s) noexcept {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

inline bool is_reserved_word(std::string_view s) noexcept {
    return s == "true" || s == "false";
}

inline bool is_symbol_name(std::string_view s) noexcept {
    return is_identifier(s) && !is_reserved_word(s);
}

enum class LogicTag { PropLogic, ClassBox };

inline std::string_view to_string(LogicTag tag) noexcept {
    return tag == LogicTag::PropLogic ? "proplogic" : "classbox";
}

inline std::optional<LogicTag> logic_tag_from_string(std::string_view s) noexcept {
    if (s == "proplogic") return LogicTag::PropLogic;
    if (s == "classbox") return LogicTag::ClassBox;
    return std::nullopt;
}

// Immutable sentence of one of the two logics. Sentences share structure and
// compare by logic and canonical text, which is unique per syntax tree.
class Sentence {
public:
    enum class Op { Atom, True, False, Not, And, Or, Implies, Iff, SubClassOf, DisjointWith };

    static Sentence atom(SymbolId name) {
        if (!is_symbol_name(name)) throw Error("invalid symbol name '" + name + "'");
        Node n{LogicTag::PropLogic, Op::Atom};
        n.text = name;
        n.names = {std::move(name), {}};
        return Sentence(std::move(n));
    }

    static Sentence constant(bool value) {
        Node n{LogicTag::PropLogic, value ? Op::True : Op::False};
        n.text = value ? "true" : "false";
        return Sentence(std::move(n));
    }

    static Sentence negation(Sentence operand) {
        require_prop(operand);
        Node n{LogicTag::PropLogic, Op::Not};
        n.text = "~" + wrap(operand, precedence(operand.op()) < precedence(Op::Not));
        n.children.push_back(std::move(operand));
        return Sentence(std::move(n));
    }

    static Sentence conjunction(Sentence l, Sentence r) { return binary(Op::And, std::move(l), std::move(r)); }
    static Sentence disjunction(Sentence l, Sentence r) { return binary(Op::Or, std::move(l), std::move(r)); }
    static Sentence implication(Sentence l, Sentence r) { return binary(Op::Implies, std::move(l), std::move(r)); }
    static Sentence biconditional(Sentence l, Sentence r) { return binary(Op::Iff, std::move(l), std::move(r)); }

    static Sentence subclass_of(SymbolId sub, SymbolId super) {
        return class_axiom(Op::SubClassOf, std::move(sub), std::move(super));
    }
    static Sentence disjoint_with(SymbolId a, SymbolId b) {
        return class_axiom(Op::DisjointWith, std::move(a), std::move(b));
    }

    LogicTag logic() const noexcept { return node_->logic; }
    Op op() const noexcept { return node_->op; }
    const std::string& text() const noexcept { return node_->text; }

    // Atom name, or the first class argument of a ClassBox axiom.
    const SymbolId& name() const noexcept { return node_->names[0]; }
    const SymbolId& first_class() const noexcept { return node_->names[0]; }
    const SymbolId& second_class() const noexcept { return node_->names[1]; }

    const Sentence& operand() const { return node_->children.at(0); }
    const Sentence& lhs() const { return node_->children.at(0); }
    const Sentence& rhs() const { return node_->children.at(1); }

    bool is_binary() const noexcept {
        return op() == Op::And || op() == Op::Or || op() == Op::Implies || op() == Op::Iff;
    }

    friend bool operator==(const Sentence& a, const Sentence& b) noexcept {
        return a.logic() == b.logic() && a.text() == b.text();
    }
    friend std::strong_ordering operator<=>(const Sentence& a, const Sentence& b) noexcept {
        if (auto c = a.logic() <=> b.logic(); c != 0) return c;
        return a.text().compare(b.text()) <=> 0;
    }

private:
    struct Node {
        LogicTag logic;
        Op op;
        std::array<SymbolId, 2> names{};
        std::vector<Sentence> children{};
        std::string text{};
    };

    explicit Sentence(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

    static int precedence(Op op) noexcept {
        switch (op) {
        case Op::Iff: return 1;
        case Op::Implies: return 2;
        case Op::Or: return 3;
        case Op::And: return 4;
        case Op::Not: return 5;
        default: return 6;
        }
    }

    static std::string_view symbol(Op op) noexcept {
        switch (op) {
        case Op::And: return "&";
        case Op::Or: return "|";
        case Op::Implies: return "->";
        case Op::Iff: return "<->";
        default: return "?";
        }
    }

    static std::string wrap(const Sentence& s, bool parens) {
        return parens ? "(" + s.text() + ")" : s.text();
    }

    static void require_prop(const Sentence& s) {
        if (s.logic() != LogicTag::PropLogic)
            throw Error("connectives apply to proplogic sentences only");
    }

    static Sentence binary(Op op, Sentence l, Sentence r) {
        require_prop(l);
        require_prop(r);
        const int p = precedence(op);
        // -> is right-associative, the other connectives associate to the left.
        const bool right_assoc = op == Op::Implies;
        const bool lp = precedence(l.op()) < p || (precedence(l.op()) == p && right_assoc);
        const bool rp = precedence(r.op()) < p || (precedence(r.op()) == p && !right_assoc);
        Node n{LogicTag::PropLogic, op};
        n.text = wrap(l, lp) + " " + std::string(symbol(op)) + " " + wrap(r, rp);
        n.children.push_back(std::move(l));
        n.children.push_back(std::move(r));
        return Sentence(std::move(n));
    }

    static Sentence class_axiom(Op op, SymbolId a, SymbolId b) {
        if (!is_symbol_name(a)) throw Error("invalid class name '" + a + "'");
        if (!is_symbol_name(b)) throw Error("invalid class name '" + b + "'");
        Node n{LogicTag::ClassBox, op};
        n.text = std::string(op == Op::SubClassOf ? "SubClassOf(" : "DisjointWith(") + a + ", " + b + ")";
        n.names = {std::move(a), std::move(b)};
        return Sentence(std::move(n));
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Concrete syntax

namespace detail {

class SentenceLexer {
public:
    enum class Kind { Ident, LParen, RParen, Comma, Not, And, Or, Implies, Iff, End };
    struct Token {
        Kind kind;
        std::string text;
        std::size_t column;
    };

    explicit SentenceLexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const noexcept { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t')) ++pos_;
        const std::size_t col = pos_ + 1;
        if (pos_ >= src_.size()) {
            tok_ = {Kind::End, "", col};
            return;
        }
        const char c = src_[pos_];
        auto fixed = [&](Kind k, std::size_t len) {
            tok_ = {k, std::string(src_.substr(pos_, len)), col};
            pos_ += len;
        };
        if (c == '(') return fixed(Kind::LParen, 1);
        if (c == ')') return fixed(Kind::RParen, 1);
        if (c == ',') return fixed(Kind::Comma, 1);
        if (c == '~') return fixed(Kind::Not, 1);
        if (c == '&') return fixed(Kind::And, 1);
        if (c == '|') return fixed(Kind::Or, 1);
        if (src_.substr(pos_, 2) == "->") return fixed(Kind::Implies, 2);
        if (src_.substr(pos_, 3) == "<->") return fixed(Kind::Iff, 3);
        std::size_t end = pos_;
        while (end < src_.size()) {
            const char d = src_[end];
            const bool word = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') || (d >= '0' && d <= '9') || d == '_';
            if (!word) break;
            ++end;
        }
        if (end == pos_)
            throw ParseError(0, "unexpected character '" + std::string(1, c) + "' at column " + std::to_string(col));
        tok_ = {Kind::Ident, std::string(src_.substr(pos_, end - pos_)), col};
        pos_ = end;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_{Kind::End, "", 0};
};

class SentenceParser {
public:
    using Kind = SentenceLexer::Kind;

    explicit SentenceParser(std::string_view src) : lex_(src) {}

    Sentence parse(LogicTag logic) {
        Sentence s = logic == LogicTag::PropLogic ? iff() : class_axiom();
        if (lex_.peek().kind != Kind::End) fail("trailing input");
        return s;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        const auto& t = lex_.peek();
        const std::string near = t.kind == Kind::End ? "end of sentence" : "'" + t.text + "'";
        throw ParseError(0, what + " near " + near + " (column " + std::to_string(t.column) + ")");
    }

    void expect(Kind k, const char* what) {
        if (lex_.peek().kind != k) fail(std::string("expected ") + what);
        lex_.take();
    }

    std::string symbol_name(const char* what) {
        if (lex_.peek().kind != Kind::Ident) fail(std::string("expected ") + what);
        if (!is_symbol_name(lex_.peek().text)) fail(std::string("invalid ") + what);
        return lex_.take().text;
    }

    Sentence class_axiom() {
        if (lex_.peek().kind != Kind::Ident) fail("expected SubClassOf or DisjointWith");
        const std::string head = lex_.peek().text;
        if (head != "SubClassOf" && head != "DisjointWith") fail("expected SubClassOf or DisjointWith");
        lex_.take();
        expect(Kind::LParen, "'('");
        std::string a = symbol_name("class name");
        expect(Kind::Comma, "','");
        std::string b = symbol_name("class name");
        expect(Kind::RParen, "')'");
        return head == "SubClassOf" ? Sentence::subclass_of(std::move(a), std::move(b))
                                    : Sentence::disjoint_with(std::move(a), std::move(b));
    }

    Sentence iff() {
        Sentence s = implies();
        while (lex_.peek().kind == Kind::Iff) {
            lex_.take();
            s = Sentence::biconditional(std::move(s), implies());
        }
        return s;
    }

    Sentence implies() {
        Sentence s = disj();
        if (lex_.peek().kind == Kind::Implies) {
            lex_.take();
            return Sentence::implication(std::move(s), implies());
        }
        return s;
    }

    Sentence disj() {
        Sentence s = conj();
        while (lex_.peek().kind == Kind::Or) {
            lex_.take();
            s = Sentence::disjunction(std::move(s), conj());
        }
        return s;
    }

    Sentence conj() {
        Sentence s = unary();
        while (lex_.peek().kind == Kind::And) {
            lex_.take();
            s = Sentence::conjunction(std::move(s), unary());
        }
        return s;
    }

    Sentence unary() {
        if (lex_.peek().kind == Kind::Not) {
            lex_.take();
            return Sentence::negation(unary());
        }
        if (lex_.peek().kind == Kind::LParen) {
            lex_.take();
            Sentence s = iff();
            expect(Kind::RParen, "')'");
            return s;
        }
        if (lex_.peek().kind != Kind::Ident) fail("expected a formula");
        const std::string& word = lex_.peek().text;
        if (word == "true" || word == "false") {
            const bool v = word == "true";
            lex_.take();
            return Sentence::constant(v);
        }
        return Sentence::atom(symbol_name("atom name"));
    }

    SentenceLexer lex_;
};

} // namespace detail

// Throws ParseError with line 0; callers reading files attach the line.
inline Sentence parse_sentence(std::string_view text, LogicTag logic) {
    return detail::SentenceParser(text).parse(logic);
}

// ---------------------------------------------------------------------------
// Semantics

// T(SubClassOf(A,B)) = A -> B, T(DisjointWith(A,B)) = ~(A & B).
// Propositional sentences are returned unchanged.
inline Sentence to_proplogic(const Sentence& s) {
    using Op = Sentence::Op;
    switch (s.op()) {
    case Op::SubClassOf:
        return Sentence::implication(Sentence::atom(s.first_class()), Sentence::atom(s.second_class()));
    case Op::DisjointWith:
        return Sentence::negation(
            Sentence::conjunction(Sentence::atom(s.first_class()), Sentence::atom(s.second_class())));
    default:
        return s;
    }
}

inline void collect_symbols(const Sentence& s, SymbolSet& out) {
    using Op = Sentence::Op;
    switch (s.op()) {
    case Op::Atom: out.insert(s.name()); break;
    case Op::True:
    case Op::False: break;
    case Op::Not: collect_symbols(s.operand(), out); break;
    case Op::SubClassOf:
    case Op::DisjointWith:
        out.insert(s.first_class());
        out.insert(s.second_class());
        break;
    default:
        collect_symbols(s.lhs(), out);
        collect_symbols(s.rhs(), out);
    }
}

// Symbols occurring in the sentences. Sentences must share one logic.
inline SymbolSet signature(std::span<const Sentence> sentences) {
    SymbolSet out;
    for (const auto& s : sentences) {
        if (s.logic() != sentences.front().logic()) throw Error("heterogeneous sentence set");
        collect_symbols(s, out);
    }
    return out;
}

inline SymbolSet signature(const Sentence& s) { return signature(std::span<const Sentence>(&s, 1)); }

inline constexpr std::size_t kMaxEntailmentAtoms = 20;

namespace detail {

// Evaluates a propositional sentence on 64 assignments at once; bit k of
// each atom's word holds that atom's value in the k-th assignment.
inline std::uint64_t eval_block(const Sentence& s, const SymbolSet& atoms, std::span<const std::uint64_t> values) {
    using Op = Sentence::Op;
    switch (s.op()) {
    case Op::Atom: {
        const auto idx = static_cast<std::size_t>(std::distance(atoms.begin(), atoms.find(s.name())));
        return values[idx];
    }
    case Op::True: return ~std::uint64_t{0};
    case Op::False: return 0;
    case Op::Not: return ~eval_block(s.operand(), atoms, values);
    case Op::And: return eval_block(s.lhs(), atoms, values) & eval_block(s.rhs(), atoms, values);
    case Op::Or: return eval_block(s.lhs(), atoms, values) | eval_block(s.rhs(), atoms, values);
    case Op::Implies: return ~eval_block(s.lhs(), atoms, values) | eval_block(s.rhs(), atoms, values);
    case Op::Iff: return ~(eval_block(s.lhs(), atoms, values) ^ eval_block(s.rhs(), atoms, values));
    default: throw Error("ClassBox sentence reached the propositional evaluator");
    }
}

// Classical entailment by enumerating every assignment of the joint signature.
inline bool truth_table_entails(std::span<const Sentence> gamma, const Sentence& phi) {
    SymbolSet atoms;
    for (const auto& g : gamma) collect_symbols(g, atoms);
    collect_symbols(phi, atoms);
    const std::size_t n = atoms.size();
    if (n > kMaxEntailmentAtoms) throw CapExceeded("entailment instance too large");

    // Low six atoms vary within a 64-lane block; higher atoms are constant per block.
    static constexpr std::array<std::uint64_t, 6> lane_patterns{
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
    const std::uint64_t live = n >= 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (std::uint64_t{1} << n)) - 1;
    const std::size_t blocks = n > 6 ? std::size_t{1} << (n - 6) : 1;

    std::vector<std::uint64_t> values(n);
    for (std::size_t i = 0; i < n && i < 6; ++i) values[i] = lane_patterns[i];
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t i = 6; i < n; ++i) values[i] = ((b >> (i - 6)) & 1u) ? ~std::uint64_t{0} : 0;
        std::uint64_t models = live;
        for (const auto& g : gamma) models &= eval_block(g, atoms, values);
        if (models & ~eval_block(phi, atoms, values)) return false;
    }
    return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Logic instances

template <class L>
concept EntailmentSystem = requires(const L& logic, std::span<const Sentence> gamma, const Sentence& phi) {
    { L::tag } -> std::convertible_to<LogicTag>;
    { logic.well_formed(phi) } -> std::same_as<bool>;
    { logic.signature(gamma) } -> std::same_as<SymbolSet>;
    { logic.entails(gamma, phi) } -> std::same_as<bool>;
};

namespace detail {

template <LogicTag Tag>
inline void require_well_formed(std::span<const Sentence> gamma, const Sentence& phi) {
    auto check = [](const Sentence& s) {
        if (s.logic() != Tag)
            throw Error("sentence '" + s.text() + "' is not well-formed in " + std::string(to_string(Tag)));
    };
    for (const auto& g : gamma) check(g);
    check(phi);
}

} // namespace detail

struct PropLogic {
    static constexpr LogicTag tag = LogicTag::PropLogic;

    bool well_formed(const Sentence& s) const noexcept { return s.logic() == tag; }
    SymbolSet signature(std::span<const Sentence> gamma) const { return ontoverse::signature(gamma); }

    bool entails(std::span<const Sentence> gamma, const Sentence& phi) const {
        detail::require_well_formed<tag>(gamma, phi);
        return detail::truth_table_entails(gamma, phi);
    }
};

// Entailment is decided on the propositional translation of every sentence.
struct ClassBox {
    static constexpr LogicTag tag = LogicTag::ClassBox;

    bool well_formed(const Sentence& s) const noexcept { return s.logic() == tag; }
    SymbolSet signature(std::span<const Sentence> gamma) const { return ontoverse::signature(gamma); }

    bool entails(std::span<const Sentence> gamma, const Sentence& phi) const {
        detail::require_well_formed<tag>(gamma, phi);
        std::vector<Sentence> translated;
        translated.reserve(gamma.size());
        for (const auto& g : gamma) translated.push_back(to_proplogic(g));
        return detail::truth_table_entails(translated, to_proplogic(phi));
    }
};

static_assert(EntailmentSystem<PropLogic>);
static_assert(EntailmentSystem<ClassBox>);

// Runtime handle over the two logic instances.
class LogicInstance {
public:
    constexpr explicit LogicInstance(LogicTag tag) noexcept : tag_(tag) {}

    static constexpr LogicInstance proplogic() noexcept { return LogicInstance(LogicTag::PropLogic); }
    static constexpr LogicInstance classbox() noexcept { return LogicInstance(LogicTag::ClassBox); }

    constexpr LogicTag tag() const noexcept { return tag_; }

    bool well_formed(const Sentence& s) const noexcept { return s.logic() == tag_; }

    SymbolSet signature(std::span<const Sentence> gamma) const { return ontoverse::signature(gamma); }

    bool entails(std::span<const Sentence> gamma, const Sentence& phi) const {
        return tag_ == LogicTag::PropLogic ? PropLogic{}.entails(gamma, phi) : ClassBox{}.entails(gamma, phi);
    }

    // Some assignment (class-membership pattern) satisfies every sentence.
    bool satisfiable(std::span<const Sentence> gamma) const {
        std::vector<Sentence> props;
        for (const auto& g : gamma) {
            if (!well_formed(g))
                throw Error("sentence '" + g.text() + "' is not well-formed in " + std::string(to_string(tag_)));
            props.push_back(to_proplogic(g));
        }
        return !detail::truth_table_entails(props, Sentence::constant(false));
    }

    friend constexpr bool operator==(LogicInstance, LogicInstance) noexcept = default;

private:
    LogicTag tag_;
};

inline bool entails(std::span<const Sentence> gamma, const Sentence& phi, LogicInstance logic) {
    return logic.entails(gamma, phi);
}

// Theta is a theory over vocab in the logic: well-formed and sig(Theta) within vocab.
inline bool is_theory_over(std::span<const Sentence> theta, const SymbolSet& vocab, LogicInstance logic) {
    for (const auto& s : theta)
        if (!logic.well_formed(s)) return false;
    const SymbolSet sig = signature(theta);
    return std::includes(vocab.begin(), vocab.end(), sig.begin(), sig.end());
}

} // namespace ontoverse
