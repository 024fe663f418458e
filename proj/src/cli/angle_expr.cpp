#include "qwalk/cli/angle_expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "qwalk/core.hpp"

namespace qwalk::cli {
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    double parse()
    {
        const double v = expr();
        skip_space();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (!std::isfinite(v))
            fail("value is not finite");
        return v;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError("bad expression \"" + std::string(s_) + "\": " + what);
    }

    void skip_space()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip_space();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool starts_pi()
    {
        skip_space();
        return s_.substr(pos_, 2) == "pi";
    }

    double expr()
    {
        double v = term();
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                v += term();
            } else if (c == '-') {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term()
    {
        double v = unary();
        for (;;) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                v *= unary();
            } else if (c == '/') {
                ++pos_;
                const double d = unary();
                if (d == 0.0)
                    fail("division by zero");
                v /= d;
            } else if (c == '(' || starts_pi()) {
                v *= primary();  // implicit product: 5pi, 2(pi+1)
            } else {
                return v;
            }
        }
    }

    double unary()
    {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return primary();
    }

    double primary()
    {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            const double v = expr();
            if (peek() != ')')
                fail("missing ')'");
            ++pos_;
            return v;
        }
        if (starts_pi()) {
            pos_ += 2;
            return kPi;
        }
        return number();
    }

    double number()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
            ++pos_;
        // exponent, but not the start of a bare identifier
        if (pos_ > start && pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t k = pos_ + 1;
            if (k < s_.size() && (s_[k] == '+' || s_[k] == '-'))
                ++k;
            if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                pos_ = k;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    ++pos_;
            }
        }
        if (pos_ == start)
            fail(pos_ < s_.size() ? "expected a number at '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_)
            fail("malformed number");
        return v;
    }
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_angle(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw ParseError("empty expression");
    return Parser(text).parse();
}

std::array<double, 2> parse_range(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("range \"" + std::string(text) + "\" must look like lo:hi");
    const double lo = parse_angle(text.substr(0, colon));
    const double hi = parse_angle(text.substr(colon + 1));
    if (!(lo < hi))
        throw ParseError("range \"" + std::string(text) + "\" needs lo < hi");
    return {lo, hi};
}

std::complex<double> parse_complex(std::string_view text)
{
    text = trim(text);
    if (text.empty())
        throw ParseError("empty complex literal");

    // split at the last top-level + or - that is not a leading sign or part
    // of an exponent
    int depth = 0;
    std::size_t split = std::string_view::npos;
    for (std::size_t k = 1; k < text.size(); ++k) {
        const char c = text[k];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if ((c == '+' || c == '-') && depth == 0 && text[k - 1] != 'e' && text[k - 1] != 'E')
            split = k;
    }

    const auto imaginary = [](std::string_view part) {
        part = trim(part);
        part.remove_suffix(1);
        part = trim(part);
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        if (part.back() == '*')
            part.remove_suffix(1);
        return parse_angle(part);
    };
    // a trailing 'i' that is not the end of "pi"
    const auto is_imag = [](std::string_view part) {
        part = trim(part);
        return !part.empty() && part.back() == 'i' && !(part.size() >= 2 && part[part.size() - 2] == 'p');
    };

    if (split == std::string_view::npos) {
        if (is_imag(text))
            return {0.0, imaginary(text)};
        return {parse_angle(text), 0.0};
    }
    const auto re = text.substr(0, split);
    const auto im = text.substr(split);
    if (!is_imag(im) || is_imag(re))
        throw ParseError("complex literal \"" + std::string(text) + "\" must look like x+yi");
    return {parse_angle(re), imaginary(im)};
}

}  // namespace qwalk::cli
