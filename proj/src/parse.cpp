#include "diolab/parse.hpp"

#include <cctype>

namespace dio {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

bool starts_with(const std::string& s, const std::string& p) {
    return s.rfind(p, 0) == 0;
}

// Split at top level on `sep`, respecting (), [] nesting.
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

mpz_class parse_mpz(const std::string& s0) {
    std::string s = trim(s0);
    if (s.empty()) throw ParseError("empty integer literal");
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("bad integer literal: " + s0);
    for (; i < s.size(); ++i)
        if (!std::isdigit((unsigned char)s[i])) throw ParseError("bad integer literal: " + s0);
    return mpz_class(s, 10);  // base fixed: base 0 would read leading zeros as octal
}

// decimal like -12.345e-6 as an exact rational
mpq_class parse_decimal(const std::string& s0) {
    std::string s = trim(s0);
    if (s.empty()) throw ParseError("empty number literal");
    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long frac_len = 0, exp10 = 0;
    bool any = false;
    for (; i < s.size() && std::isdigit((unsigned char)s[i]); ++i) {
        digits += s[i];
        any = true;
    }
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && std::isdigit((unsigned char)s[i]); ++i) {
            digits += s[i];
            ++frac_len;
            any = true;
        }
    }
    if (!any) throw ParseError("bad number literal: " + s0);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::string e = s.substr(i + 1);
        exp10 = parse_mpz(e).get_si();
        i = s.size();
    }
    if (i != s.size()) throw ParseError("bad number literal: " + s0);
    if (digits.empty()) digits = "0";
    mpq_class v{mpz_class(digits, 10)};
    long net = exp10 - frac_len;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)(net < 0 ? -net : net));
    if (net < 0)
        v /= mpq_class(p10);
    else
        v *= mpq_class(p10);
    v.canonicalize();
    return neg ? mpq_class(-v) : v;
}

}  // namespace

mpq_class parse_rational(const std::string& s0) {
    std::string s = trim(s0);
    if (starts_with(s, "rat:")) s = s.substr(4);
    size_t slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num = parse_mpz(s.substr(0, slash));
        mpz_class den = parse_mpz(s.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: " + s0);
        mpq_class v(num, den);
        v.canonicalize();
        return v;
    }
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        return parse_decimal(s);
    return mpq_class(parse_mpz(s));
}

ContinuedFraction parse_cf_literal(const std::string& s0) {
    std::string s = trim(s0);
    if (starts_with(s, "cf:")) s = s.substr(3);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("continued fraction literal must be cf:[...]: " + s0);
    s = s.substr(1, s.size() - 2);
    auto head_tail = split_top(s, ';');
    if (head_tail.size() > 2) throw ParseError("too many ';' in cf literal: " + s0);
    std::vector<mpz_class> terms{parse_mpz(head_tail[0])};
    std::vector<mpz_class> period;
    if (head_tail.size() == 2 && !trim(head_tail[1]).empty()) {
        for (const auto& part0 : split_top(head_tail[1], ',')) {
            std::string part = trim(part0);
            if (part.empty()) throw ParseError("empty cf term: " + s0);
            if (part.front() == '(') {
                if (part.back() != ')' || !period.empty())
                    throw ParseError("bad period group in cf literal: " + s0);
                for (const auto& p : split_top(part.substr(1, part.size() - 2), ','))
                    period.push_back(parse_mpz(p));
            } else {
                if (!period.empty())
                    throw ParseError("terms after the period group: " + s0);
                terms.push_back(parse_mpz(part));
            }
        }
    }
    if (period.empty()) return ContinuedFraction::finite(std::move(terms));
    return ContinuedFraction::periodic(std::move(terms), std::move(period));
}

Real parse_number(const std::string& s0) {
    std::string s = trim(s0);
    if (s.empty()) throw ParseError("empty number literal");
    if (starts_with(s, "cf:")) return parse_cf_literal(s).value();
    if (starts_with(s, "dec:")) {
        std::string body = s.substr(4);
        size_t tilde = body.find('~');
        if (tilde == std::string::npos)
            return Real(parse_decimal(body));
        mpq_class mid = parse_decimal(body.substr(0, tilde));
        mpq_class rad = parse_decimal(body.substr(tilde + 1));
        if (rad < 0) throw ParseError("negative radius: " + s0);
        if (rad == 0) return Real(mid);
        return Real::from_interval(Interval(mid - rad, mid + rad), "dec literal");
    }
    return Real(parse_rational(s));
}

std::vector<Real> parse_vector(const std::string& s0) {
    std::string s = trim(s0);
    if (s.empty()) throw ParseError("empty vector literal");
    std::vector<Real> out;
    if (s.front() == '(') {
        if (s.back() != ')') throw ParseError("unbalanced vector literal: " + s0);
        for (const auto& part : split_top(s.substr(1, s.size() - 2), ','))
            out.push_back(parse_number(part));
    } else {
        out.push_back(parse_number(s));
    }
    return out;
}

TorusVector parse_torus(const std::string& s) { return TorusVector(parse_vector(s)); }

PsiSpec parse_psi(const std::string& s0, const PrecisionContext& ctx) {
    std::string s = trim(s0);
    if (starts_with(s, "pow:")) {
        auto parts = split_top(s.substr(4), ',');
        if (parts.size() != 2) throw ParseError("power-law literal needs c,alpha: " + s0);
        return PsiSpec::power_law(parse_number(parts[0]), parse_number(parts[1]), ctx);
    }
    if (starts_with(s, "const:"))
        return PsiSpec::constant(parse_number(s.substr(6)), ctx);
    if (starts_with(s, "recip:")) {
        std::string body = trim(s.substr(6));
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw ParseError("reciprocal literal must be recip:[...]: " + s0);
        std::vector<mpz_class> k;
        for (const auto& part : split_top(body.substr(1, body.size() - 2), ','))
            k.push_back(parse_mpz(part));
        return PsiSpec::reciprocal(std::move(k));
    }
    if (starts_with(s, "killer:")) {
        auto parts = split_top(s.substr(7), ';');
        if (parts.size() != 3) throw ParseError("killer literal needs x;y;ell: " + s0);
        return killer_psi(parse_torus(parts[0]), parse_torus(parts[1]),
                          parse_mpz(parts[2]), ctx);
    }
    if (starts_with(s, "powof:")) {
        std::string body = s.substr(6);
        size_t caret = body.rfind('^');
        if (caret == std::string::npos)
            throw ParseError("power literal must be powof:<psi>^t: " + s0);
        return PsiSpec::power(parse_psi(body.substr(0, caret), ctx),
                              parse_number(body.substr(caret + 1)), ctx);
    }
    throw ParseError("unknown psi literal: " + s0);
}

std::vector<mpz_class> parse_schedule(const std::string& s0) {
    std::string s = trim(s0);
    if (!s.empty() && s.front() == '[') {
        if (s.back() != ']') throw ParseError("unbalanced schedule literal: " + s0);
        s = s.substr(1, s.size() - 2);
    }
    std::vector<mpz_class> out;
    for (const auto& part : split_top(s, ',')) {
        mpz_class n = parse_mpz(part);
        if (n < 1) throw ParseError("schedule entries must be positive: " + s0);
        if (!out.empty() && n <= out.back())
            throw ParseError("schedule must be increasing: " + s0);
        out.push_back(n);
    }
    return out;
}

mpz_class parse_integer(const std::string& s) { return parse_mpz(s); }

}  // namespace dio
