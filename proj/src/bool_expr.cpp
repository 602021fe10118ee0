#include "qic/bool_expr.hpp"

#include <cctype>
#include <limits>
#include <stdexcept>

#include "qic/error.hpp"

namespace qic {

BoolExpr BoolExpr::constant(bool value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = value;
    return BoolExpr(std::move(node));
}

BoolExpr BoolExpr::variable(unsigned qubit) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Variable;
    node->qubit = qubit;
    return BoolExpr(std::move(node));
}

BoolExpr BoolExpr::negation(BoolExpr operand) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->lhs = std::make_shared<const BoolExpr>(std::move(operand));
    return BoolExpr(std::move(node));
}

BoolExpr BoolExpr::binary(Kind kind, BoolExpr lhs, BoolExpr rhs) {
    if (kind != Kind::And && kind != Kind::Or && kind != Kind::Xor) {
        throw std::invalid_argument("binary expression needs And, Or or Xor");
    }
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->lhs = std::make_shared<const BoolExpr>(std::move(lhs));
    node->rhs = std::make_shared<const BoolExpr>(std::move(rhs));
    return BoolExpr(std::move(node));
}

bool BoolExpr::evaluate(BasisIndex i) const {
    switch (kind()) {
        case Kind::Constant:
            return value();
        case Kind::Variable:
            return qubit() < 64 && ((i >> qubit()) & 1U);
        case Kind::Not:
            return !lhs().evaluate(i);
        case Kind::And:
            return lhs().evaluate(i) && rhs().evaluate(i);
        case Kind::Or:
            return lhs().evaluate(i) || rhs().evaluate(i);
        case Kind::Xor:
            return lhs().evaluate(i) != rhs().evaluate(i);
    }
    return false;
}

std::optional<unsigned> BoolExpr::max_qubit() const {
    switch (kind()) {
        case Kind::Constant:
            return std::nullopt;
        case Kind::Variable:
            return qubit();
        case Kind::Not:
            return lhs().max_qubit();
        default: {
            auto a = lhs().max_qubit();
            auto b = rhs().max_qubit();
            if (!a) return b;
            if (!b) return a;
            return std::max(*a, *b);
        }
    }
}

bool operator==(const BoolExpr& a, const BoolExpr& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case BoolExpr::Kind::Constant:
            return a.value() == b.value();
        case BoolExpr::Kind::Variable:
            return a.qubit() == b.qubit();
        case BoolExpr::Kind::Not:
            return a.lhs() == b.lhs();
        default:
            return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

namespace {

constexpr int kMaxNesting = 2000;

class ExprParser {
  public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    BoolExpr parse() {
        BoolExpr result = expr(0);
        skip_space();
        if (pos_ < text_.size()) {
            fail("expected operator or end of input");
        }
        return result;
    }

  private:
    BoolExpr expr(int depth) {
        BoolExpr lhs = term(depth);
        for (;;) {
            skip_space();
            if (peek('|')) {
                ++pos_;
                lhs = BoolExpr::binary(BoolExpr::Kind::Or, std::move(lhs), term(depth));
            } else if (peek('^')) {
                ++pos_;
                lhs = BoolExpr::binary(BoolExpr::Kind::Xor, std::move(lhs), term(depth));
            } else {
                return lhs;
            }
        }
    }

    BoolExpr term(int depth) {
        BoolExpr lhs = factor(depth);
        for (;;) {
            skip_space();
            if (!peek('&')) {
                return lhs;
            }
            ++pos_;
            lhs = BoolExpr::binary(BoolExpr::Kind::And, std::move(lhs), factor(depth));
        }
    }

    BoolExpr factor(int depth) {
        if (depth > kMaxNesting) {
            fail("expression nested too deeply");
        }
        skip_space();
        if (pos_ >= text_.size()) {
            fail("expected '~', '(', variable, '0' or '1' but reached end of input");
        }
        char ch = text_[pos_];
        if (ch == '~') {
            ++pos_;
            return BoolExpr::negation(factor(depth + 1));
        }
        if (ch == '(') {
            ++pos_;
            BoolExpr inner = expr(depth + 1);
            skip_space();
            if (!peek(')')) {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        if (ch == '0' || ch == '1') {
            ++pos_;
            return BoolExpr::constant(ch == '1');
        }
        if (ch == 'b') {
            std::size_t start = pos_;
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                fail("expected qubit index digits after 'b'");
            }
            unsigned long long index = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                index = index * 10 + static_cast<unsigned>(text_[pos_] - '0');
                if (index > std::numeric_limits<unsigned>::max() / 10) {
                    pos_ = start;
                    fail("qubit index too large");
                }
                ++pos_;
            }
            return BoolExpr::variable(static_cast<unsigned>(index));
        }
        fail("expected '~', '(', variable, '0' or '1'");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char ch) const { return pos_ < text_.size() && text_[pos_] == ch; }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

void render(const BoolExpr& e, std::string& out) {
    switch (e.kind()) {
        case BoolExpr::Kind::Constant:
            out += e.value() ? '1' : '0';
            return;
        case BoolExpr::Kind::Variable:
            out += 'b';
            out += std::to_string(e.qubit());
            return;
        case BoolExpr::Kind::Not:
            out += '~';
            render(e.lhs(), out);
            return;
        default:
            break;
    }
    const char* op = e.kind() == BoolExpr::Kind::And ? " & " : e.kind() == BoolExpr::Kind::Or ? " | " : " ^ ";
    out += '(';
    render(e.lhs(), out);
    out += op;
    render(e.rhs(), out);
    out += ')';
}

}  // namespace

BoolExpr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string to_string(const BoolExpr& expr) {
    std::string out;
    render(expr, out);
    return out;
}

}  // namespace qic
