#include "qic/predicate.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "qic/error.hpp"

namespace qic {

namespace {

// Bit b of word w is index 64*w + b; these are the per-word values of
// qubits 0..5, which vary inside a word.
constexpr std::uint64_t kLowQubitPattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint64_t qubit_word(unsigned qubit, std::uint64_t word_index) {
    if (qubit < 6) return kLowQubitPattern[qubit];
    return ((word_index >> (qubit - 6)) & 1U) ? ~std::uint64_t{0} : 0;
}

std::size_t words_for(const Register& reg) { return static_cast<std::size_t>((reg.dimension() + 63) / 64); }

// Postfix form of a BoolExpr, evaluated over 64 indices per step.
class SlicedExpr {
  public:
    explicit SlicedExpr(const BoolExpr& expr) {
        emit(expr);
        stack_.reserve(program_.size());
    }

    std::uint64_t evaluate(std::uint64_t word_index) {
        stack_.clear();
        for (const Op& op : program_) {
            switch (op.kind) {
                case BoolExpr::Kind::Constant:
                    stack_.push_back(op.arg ? ~std::uint64_t{0} : 0);
                    break;
                case BoolExpr::Kind::Variable:
                    stack_.push_back(qubit_word(op.arg, word_index));
                    break;
                case BoolExpr::Kind::Not:
                    stack_.back() = ~stack_.back();
                    break;
                default: {
                    std::uint64_t rhs = stack_.back();
                    stack_.pop_back();
                    std::uint64_t& lhs = stack_.back();
                    if (op.kind == BoolExpr::Kind::And) {
                        lhs &= rhs;
                    } else if (op.kind == BoolExpr::Kind::Or) {
                        lhs |= rhs;
                    } else {
                        lhs ^= rhs;
                    }
                }
            }
        }
        return stack_.back();
    }

  private:
    struct Op {
        BoolExpr::Kind kind;
        unsigned arg;
    };

    void emit(const BoolExpr& e) {
        switch (e.kind()) {
            case BoolExpr::Kind::Constant:
                program_.push_back({e.kind(), e.value() ? 1U : 0U});
                return;
            case BoolExpr::Kind::Variable:
                program_.push_back({e.kind(), e.qubit()});
                return;
            case BoolExpr::Kind::Not:
                emit(e.lhs());
                program_.push_back({e.kind(), 0});
                return;
            default:
                emit(e.lhs());
                emit(e.rhs());
                program_.push_back({e.kind(), 0});
        }
    }

    std::vector<Op> program_;
    std::vector<std::uint64_t> stack_;
};

std::uint64_t cnf_word(const CnfFormula& cnf, std::uint64_t word_index) {
    std::uint64_t acc = ~std::uint64_t{0};
    for (const auto& clause : cnf.clauses) {
        std::uint64_t any = 0;
        for (int lit : clause) {
            std::uint64_t v = qubit_word(static_cast<unsigned>(std::abs(lit)) - 1, word_index);
            any |= lit > 0 ? v : ~v;
        }
        acc &= any;
        if (acc == 0) break;
    }
    return acc;
}

// Repeats a mask over a smaller register across the low bits of a larger one.
std::vector<std::uint64_t> tile_words(const PhaseMask& part, const Register& target) {
    std::vector<std::uint64_t> out(words_for(target));
    auto src = part.words();
    const std::uint64_t part_dim = part.reg().dimension();
    if (part_dim >= 64) {
        for (std::size_t w = 0; w < out.size(); ++w) {
            out[w] = src[w % src.size()];
        }
        return out;
    }
    std::uint64_t pattern = src[0];
    for (std::uint64_t filled = part_dim; filled < 64; filled *= 2) {
        pattern |= pattern << filled;
    }
    std::fill(out.begin(), out.end(), pattern);
    return out;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Predicate::Predicate(Source source, Register reg) : source_(std::move(source)), reg_(reg) {
    if (reg_.total() > kMaxMaskQubits) {
        throw std::invalid_argument(
            "predicates support at most " + std::to_string(kMaxMaskQubits) + " qubits, register has " +
            std::to_string(reg_.total()));
    }
    const unsigned m = reg_.total();
    std::visit(
        Overloaded{
            [&](const BoolExpr& e) {
                if (auto q = e.max_qubit(); q && *q >= m) throw UnboundVariable(*q, m);
            },
            [&](const CnfFormula& cnf) {
                for (const auto& clause : cnf.clauses) {
                    for (int lit : clause) {
                        if (lit == 0) throw std::invalid_argument("CNF clause contains literal 0");
                        unsigned q = static_cast<unsigned>(std::abs(lit)) - 1;
                        if (q >= m) throw UnboundVariable(q, m);
                    }
                    if (clause.empty()) throw std::invalid_argument("CNF formula contains an empty clause");
                }
            },
            [&](IndexSet& set) {
                std::sort(set.indices.begin(), set.indices.end());
                set.indices.erase(std::unique(set.indices.begin(), set.indices.end()), set.indices.end());
                if (!set.indices.empty() && !reg_.contains(set.indices.back())) {
                    throw IndexOutOfRange(
                        "valid index " + std::to_string(set.indices.back()) + " out of range for " +
                        std::to_string(m) + " qubits");
                }
            },
            [&](const Conjunction& conj) {
                for (const auto& part : conj.parts) {
                    if (!part) throw std::invalid_argument("null conjunction part");
                    if (part->reg().total() > m) {
                        throw RegisterMismatch("conjunction part is wider than the predicate register");
                    }
                }
            },
        },
        source_);
}

Predicate Predicate::from_expr(std::string_view text, Register reg) { return Predicate(parse_expr(text), reg); }

Predicate Predicate::from_indices(std::vector<BasisIndex> valid, Register reg) {
    return Predicate(IndexSet{std::move(valid)}, reg);
}

Predicate Predicate::all_of(std::vector<Predicate> parts, Register reg) {
    Conjunction conj;
    for (auto& p : parts) {
        conj.parts.push_back(std::make_shared<const Predicate>(std::move(p)));
    }
    return Predicate(std::move(conj), reg);
}

bool Predicate::satisfies_source(BasisIndex i) const {
    if (!reg_.contains(i)) {
        throw IndexOutOfRange(
            "basis index " + std::to_string(i) + " out of range for " + std::to_string(reg_.total()) + " qubits");
    }
    return std::visit(
        Overloaded{
            [&](const BoolExpr& e) { return e.evaluate(i); },
            [&](const CnfFormula& cnf) { return cnf.evaluate(i); },
            [&](const IndexSet& set) { return std::binary_search(set.indices.begin(), set.indices.end(), i); },
            [&](const Conjunction& conj) {
                for (const auto& part : conj.parts) {
                    if (!part->evaluate(i & (part->reg().dimension() - 1))) return false;
                }
                return true;
            },
        },
        source_);
}

bool Predicate::evaluate(BasisIndex i) const { return satisfies_source(i) && !exclusions_.contains(i); }

PhaseMask Predicate::compile_source_mask() const {
    const std::size_t n_words = words_for(reg_);
    return std::visit(
        Overloaded{
            [&](const BoolExpr& e) {
                SlicedExpr sliced(e);
                std::vector<std::uint64_t> words(n_words);
                for (std::size_t w = 0; w < n_words; ++w) words[w] = sliced.evaluate(w);
                return PhaseMask::from_words(reg_, std::move(words));
            },
            [&](const CnfFormula& cnf) {
                std::vector<std::uint64_t> words(n_words);
                for (std::size_t w = 0; w < n_words; ++w) words[w] = cnf_word(cnf, w);
                return PhaseMask::from_words(reg_, std::move(words));
            },
            [&](const IndexSet& set) { return PhaseMask(reg_, set.indices); },
            [&](const Conjunction& conj) {
                std::vector<std::uint64_t> words(n_words, ~std::uint64_t{0});
                for (const auto& part : conj.parts) {
                    auto tiled = tile_words(part->compile_mask(), reg_);
                    for (std::size_t w = 0; w < n_words; ++w) words[w] &= tiled[w];
                }
                return PhaseMask::from_words(reg_, std::move(words));
            },
        },
        source_);
}

PhaseMask Predicate::compile_mask() const {
    PhaseMask mask = compile_source_mask();
    for (BasisIndex i : exclusions_) {
        mask.set(i, false);
    }
    return mask;
}

Predicate Predicate::with_exclusions(std::span<const BasisIndex> found) const {
    Predicate out = *this;
    for (BasisIndex i : found) {
        if (!reg_.contains(i)) {
            throw IndexOutOfRange("excluded index " + std::to_string(i) + " out of range");
        }
        out.exclusions_.insert(i);
    }
    return out;
}

std::string Predicate::describe() const {
    std::ostringstream out;
    std::visit(
        Overloaded{
            [&](const BoolExpr& e) { out << "expr " << to_string(e); },
            [&](const CnfFormula& cnf) {
                out << "cnf " << cnf.variable_count << " vars " << cnf.clauses.size() << " clauses";
            },
            [&](const IndexSet& set) {
                out << "valid {";
                for (std::size_t k = 0; k < set.indices.size(); ++k) {
                    out << (k ? "," : "") << set.indices[k];
                }
                out << "}";
            },
            [&](const Conjunction& conj) {
                out << "all_of(";
                for (std::size_t k = 0; k < conj.parts.size(); ++k) {
                    out << (k ? "; " : "") << conj.parts[k]->describe();
                }
                out << ")";
            },
        },
        source_);
    return out.str();
}

PhaseMask compile_mask(const Predicate& pred, const Register& reg) {
    if (!(pred.reg() == reg)) {
        throw RegisterMismatch("predicate is bound to a different register");
    }
    return pred.compile_mask();
}

}  // namespace qic
