#include "qic/dimacs.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "qic/error.hpp"

namespace qic {

bool CnfFormula::evaluate(BasisIndex i) const {
    for (const auto& clause : clauses) {
        bool satisfied = false;
        for (int lit : clause) {
            unsigned q = static_cast<unsigned>(std::abs(lit)) - 1;
            bool bit = q < 64 && ((i >> q) & 1U);
            if (bit == (lit > 0)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) {
            return false;
        }
    }
    return true;
}

namespace {

struct Token {
    std::string_view text;
    std::size_t offset;
};

class DimacsReader {
  public:
    explicit DimacsReader(std::string_view text) : text_(text) {}

    CnfFormula read() {
        CnfFormula cnf;
        bool have_header = false;
        unsigned long long declared_clauses = 0;
        std::vector<int> clause;
        std::size_t clause_start = 0;

        while (pos_ < text_.size()) {
            skip_blank();
            if (pos_ >= text_.size()) break;
            if (at_line_start_ && text_[pos_] == 'c') {
                skip_line();
                continue;
            }
            if (at_line_start_ && text_[pos_] == 'p') {
                if (have_header) {
                    throw ParseError(pos_, "duplicate problem header");
                }
                if (!cnf.clauses.empty() || !clause.empty()) {
                    throw ParseError(pos_, "problem header after clauses");
                }
                read_header(cnf, declared_clauses);
                have_header = true;
                continue;
            }
            Token tok = next_token();
            if (!have_header) {
                throw ParseError(tok.offset, "expected 'p cnf <vars> <clauses>' header before clauses");
            }
            long long lit = parse_int(tok, "literal");
            if (lit == 0) {
                if (clause.empty()) {
                    throw ParseError(tok.offset, "empty clause");
                }
                cnf.clauses.push_back(std::move(clause));
                clause.clear();
                continue;
            }
            if (static_cast<unsigned long long>(std::llabs(lit)) > cnf.variable_count) {
                throw ParseError(
                    tok.offset, "literal " + std::string(tok.text) + " out of range for " +
                                    std::to_string(cnf.variable_count) + " variables");
            }
            if (clause.empty()) clause_start = tok.offset;
            clause.push_back(static_cast<int>(lit));
        }

        if (!have_header) {
            throw ParseError(text_.size(), "missing 'p cnf <vars> <clauses>' header");
        }
        if (!clause.empty()) {
            throw ParseError(clause_start, "clause not terminated by 0");
        }
        if (cnf.clauses.size() != declared_clauses) {
            throw ParseError(
                text_.size(), "clause count mismatch: header declares " + std::to_string(declared_clauses) +
                                  ", found " + std::to_string(cnf.clauses.size()));
        }
        return cnf;
    }

  private:
    void read_header(CnfFormula& cnf, unsigned long long& declared_clauses) {
        std::size_t line_end = text_.find('\n', pos_);
        if (line_end == std::string_view::npos) line_end = text_.size();
        Token p = next_token();
        if (p.text != "p") {
            throw ParseError(p.offset, "malformed problem header");
        }
        Token fmt = next_token_before(line_end, "format 'cnf'");
        if (fmt.text != "cnf") {
            throw ParseError(fmt.offset, "unsupported problem format, expected 'cnf'");
        }
        Token vars = next_token_before(line_end, "variable count");
        Token clauses = next_token_before(line_end, "clause count");
        long long v = parse_int(vars, "variable count");
        long long c = parse_int(clauses, "clause count");
        if (v < 0 || v > static_cast<long long>(kMaxQubits)) {
            throw ParseError(vars.offset, "variable count must be between 0 and " + std::to_string(kMaxQubits));
        }
        if (c < 0) {
            throw ParseError(clauses.offset, "clause count must be non-negative");
        }
        skip_blank_in_line();
        if (pos_ < line_end) {
            throw ParseError(pos_, "unexpected text after problem header");
        }
        cnf.variable_count = static_cast<unsigned>(v);
        declared_clauses = static_cast<unsigned long long>(c);
    }

    Token next_token_before(std::size_t line_end, const char* what) {
        skip_blank_in_line();
        if (pos_ >= line_end) {
            throw ParseError(pos_, std::string("malformed problem header: expected ") + what);
        }
        return next_token();
    }

    Token next_token() {
        skip_blank();
        std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        at_line_start_ = false;
        return {text_.substr(start, pos_ - start), start};
    }

    static long long parse_int(const Token& tok, const char* what) {
        long long value = 0;
        const char* first = tok.text.data();
        const char* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc() || ptr != last || value < -2147483647LL || value > 2147483647LL) {
            throw ParseError(tok.offset, std::string("expected integer ") + what + ", got '" + std::string(tok.text) + "'");
        }
        return value;
    }

    void skip_blank() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            if (text_[pos_] == '\n') at_line_start_ = true;
            ++pos_;
        }
    }

    void skip_blank_in_line() {
        while (pos_ < text_.size() && text_[pos_] != '\n' && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    void skip_line() {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    bool at_line_start_ = true;
};

}  // namespace

CnfFormula parse_dimacs(std::string_view text) { return DimacsReader(text).read(); }

}  // namespace qic
