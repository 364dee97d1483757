#include "mfkit/exactalg/parse.hpp"

#include <cctype>
#include <memory>

#include "mfkit/error.hpp"

namespace mfkit {

namespace {

struct Node {
    enum Kind { Number, Var, Add, Sub, Mul, Neg, Pow } kind;
    mpq_class value;
    std::string name;
    unsigned exponent = 0;
    std::unique_ptr<Node> a, b;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        skip();
        if (pos_ >= s_.size()) fail("empty expression");
        auto n = expr();
        skip();
        if (pos_ < s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::Parse,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->a = std::move(a);
        n->b = std::move(b);
        return n;
    }

    NodePtr expr() {
        auto lhs = term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                lhs = make(Node::Add, std::move(lhs), term());
            } else if (peek('-')) {
                ++pos_;
                lhs = make(Node::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term() {
        auto lhs = unary();
        while (peek('*')) {
            ++pos_;
            lhs = make(Node::Mul, std::move(lhs), unary());
        }
        if (peek('/')) fail("'/' is only allowed inside a rational literal a/b");
        return lhs;
    }

    NodePtr unary() {
        if (peek('-')) {
            ++pos_;
            return make(Node::Neg, unary());
        }
        if (peek('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    NodePtr power() {
        auto base = atom();
        if (peek('^')) {
            ++pos_;
            skip();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected non-negative integer exponent");
            std::string digits = integer();
            if (digits.size() > 6) fail("exponent too large");
            auto n = make(Node::Pow, std::move(base));
            n->exponent = static_cast<unsigned>(std::stoul(digits));
            return n;
        }
        return base;
    }

    std::string integer() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto n = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            auto n = make(Node::Number);
            mpz_class num(integer());
            mpz_class den(1);
            std::size_t save = pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    fail("expected integer denominator");
                den = mpz_class(integer());
                if (den == 0) fail("zero denominator");
            } else {
                pos_ = save;
            }
            n->value = mpq_class(num, den);
            n->value.canonicalize();
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            auto n = make(Node::Var);
            n->name = s_.substr(start, pos_ - start);
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

void collect(const Node& n, std::vector<std::string>& names) {
    if (n.kind == Node::Var) {
        for (auto& x : names)
            if (x == n.name) return;
        names.push_back(n.name);
    }
    if (n.a) collect(*n.a, names);
    if (n.b) collect(*n.b, names);
}

MultiPoly eval(const Node& n, const RingPtr& ring) {
    switch (n.kind) {
    case Node::Number: return MultiPoly(ring, Scalar(n.value, ring->field()));
    case Node::Var: {
        long i = ring->index_of(n.name);
        if (i < 0) throw Error(ErrorCode::Parse, "unknown variable '" + n.name + "'");
        return MultiPoly::variable(ring, static_cast<std::size_t>(i));
    }
    case Node::Add: return eval(*n.a, ring) + eval(*n.b, ring);
    case Node::Sub: return eval(*n.a, ring) - eval(*n.b, ring);
    case Node::Mul: return eval(*n.a, ring) * eval(*n.b, ring);
    case Node::Neg: return -eval(*n.a, ring);
    case Node::Pow: return eval(*n.a, ring).pow(n.exponent);
    }
    throw Error(ErrorCode::Parse, "bad expression node");
}

} // namespace

std::vector<MultiPoly> parse_polys(const std::vector<std::string>& srcs, const ParseOptions& opts) {
    std::vector<NodePtr> trees;
    std::vector<std::string> names = opts.vars;
    for (auto& s : srcs) {
        trees.push_back(Parser(s).parse());
        std::vector<std::string> seen = names;
        collect(*trees.back(), seen);
        if (!opts.allow_new_vars && seen.size() != names.size())
            throw Error(ErrorCode::Parse, "unknown variable '" + seen[names.size()] + "'");
        names = std::move(seen);
    }
    auto ring = make_ring(names, opts.field);
    std::vector<MultiPoly> out;
    for (auto& t : trees) out.push_back(eval(*t, ring));
    return out;
}

MultiPoly parse_poly(const std::string& src, const ParseOptions& opts) {
    return parse_polys({src}, opts).front();
}

MultiPoly parse_poly_in(const std::string& src, const RingPtr& ring) {
    auto tree = Parser(src).parse();
    return eval(*tree, ring);
}

} // namespace mfkit
