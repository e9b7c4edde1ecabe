#include "insola/parse.hpp"

#include <cctype>

namespace insola {

namespace {

constexpr int kMaxExponent = 4096;

class Parser {
public:
    Parser(const std::string& src, bool allow_yz) : src_(src), allow_yz_(allow_yz) {}

    TriPoly run() {
        TriPoly e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected input", {"end of input", "+", "-", "*"});
        return e;
    }

private:
    TriPoly expr() {
        TriPoly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    TriPoly term() {
        TriPoly acc = factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                acc = acc * factor();
            else
                return acc;
        }
    }

    TriPoly factor() {
        skip_ws();
        if (accept('-')) return -factor();
        TriPoly b = base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ < src_.size() && src_[pos_] == '-') throw NegativeExponent(at);
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("expected exponent", {"unsigned integer"});
            mpz_class e(read_digits());
            if (e > kMaxExponent)
                throw ParseError("exponent too large", at, {"integer <= 4096"});
            return b.pow(static_cast<int>(e.get_si()));
        }
        return b;
    }

    TriPoly base() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of input", expected_base());
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) return variable();
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (accept('(')) {
            TriPoly e = expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'", {")"});
            return e;
        }
        fail("unexpected character", expected_base());
        return {};  // unreachable
    }

    TriPoly variable() {
        std::size_t at = pos_;
        std::string name;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_])))
            name += src_[pos_++];
        if (name == "x") return TriPoly::x();
        if (name == "i") return TriPoly::constant(CRat::i());
        if (allow_yz_) {
            if (name == "y") return TriPoly::y();
            if (name == "z") return TriPoly::z();
        }
        throw UnknownIdentifier(name, at, expected_base());
    }

    TriPoly number() {
        mpz_class intpart(read_digits());
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            std::size_t at = pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                throw ParseError("expected digits after decimal point", at, {"digits"});
            std::string frac = read_digits();
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            Rat value(intpart * scale + mpz_class(frac), scale);
            value.canonicalize();
            return TriPoly::constant(CRat(value));
        }
        std::size_t save = pos_;
        skip_ws();
        if (accept('/')) {
            skip_ws();
            std::size_t at = pos_;
            if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                fail("expected denominator", {"unsigned integer"});
            mpz_class den(read_digits());
            if (den == 0) throw ParseError("zero denominator", at, {"nonzero integer"});
            Rat value(intpart, den);
            value.canonicalize();
            return TriPoly::constant(CRat(value));
        }
        pos_ = save;
        return TriPoly::constant(CRat(Rat(intpart)));
    }

    std::string read_digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            out += src_[pos_++];
        return out;
    }

    std::vector<std::string> expected_base() const {
        if (allow_yz_) return {"x", "y", "z", "i", "number", "("};
        return {"x", "i", "number", "("};
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(msg, pos_, std::move(expected));
    }

    const std::string& src_;
    bool allow_yz_;
    std::size_t pos_ = 0;
};

}  // namespace

TriPoly parse_ode(const std::string& text) { return Parser(text, true).run(); }

UniPoly parse_recipe(const std::string& text) { return Parser(text, false).run().as_x_poly(); }

CRat parse_crat(const std::string& text) {
    UniPoly p = Parser(text, false).run().as_x_poly();
    if (p.degree() > 0) throw ParseError("expected a constant expression", 0, {"number"});
    return p.coeff(0);
}

}  // namespace insola
