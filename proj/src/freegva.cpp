#include "gpsub/freegva.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace gpsub {

long FreeMonomial::total_offset() const {
    long s = 0;
    for (const auto& x : letters_) s += x.offset;
    return s;
}

ChargeVector FreeMonomial::charge(size_t rank) const {
    ChargeVector c = ChargeVector::zero(rank);
    for (const auto& x : letters_) c = c + ChargeVector::unit(rank, x.index);
    return c;
}

FreeMonomial FreeMonomial::prefix(size_t k) const {
    return FreeMonomial(std::vector<FreeLetter>(letters_.begin(), letters_.begin() + k));
}

FreeMonomial FreeMonomial::appended(FreeLetter x) const {
    std::vector<FreeLetter> ls = letters_;
    ls.push_back(x);
    return FreeMonomial(std::move(ls));
}

bool FreeMonomial::is_canonical() const {
    for (size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].offset >= 0) return false;
        if (i == 0) continue;
        const FreeLetter& inner = letters_[i - 1];
        const FreeLetter& outer = letters_[i];
        if (outer.index < inner.index) return false;
        if (outer.index == inner.index && outer.offset > inner.offset) return false;
    }
    return true;
}

Rational FreeMonomial::weight(const Lattice& l, const ChargeVector& lambda) const {
    ChargeVector total = charge(l.rank()) + lambda;
    Rational w = l.pairing(total, total) / Rational(2);
    for (const auto& x : letters_) w += Rational(-x.offset - 1);
    return w;
}

std::string FreeMonomial::str(const Lattice& l) const {
    if (letters_.empty()) return "1";
    std::ostringstream os;
    for (size_t i = letters_.size(); i-- > 0;) {
        os << l.labels()[letters_[i].index] << '(' << letters_[i].offset << ')';
        if (i != 0) os << ' ';
    }
    return os.str();
}

namespace {

long parse_offset(const std::string& text, const std::string& token) {
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad offset in monomial letter '" + token + "'");
    }
    if (pos != text.size()) throw ParseError("bad offset in monomial letter '" + token + "'");
    return value;
}

size_t parse_letter_index(const Lattice& l, const std::string& name, const std::string& token) {
    bool digits = !name.empty();
    for (char c : name) digits = digits && std::isdigit(static_cast<unsigned char>(c));
    if (digits) {
        size_t idx = l.rank();
        try {
            idx = std::stoul(name);
        } catch (const std::exception&) {
        }
        if (idx < l.rank()) return idx;
        throw ParseError("letter index " + name + " out of range for rank " +
                         std::to_string(l.rank()));
    }
    try {
        return l.index_of_label(name);
    } catch (const ParseError&) {
        throw ParseError("unknown letter '" + name + "' in monomial token '" + token + "'");
    }
}

}  // namespace

FreeMonomial parse_monomial(const Lattice& l, const std::string& text) {
    std::istringstream is(text);
    std::vector<FreeLetter> outer_first;
    std::string token;
    while (is >> token) {
        if (token == "1" && outer_first.empty()) {
            if (is >> token) throw ParseError("unexpected token after vacuum monomial '1'");
            return FreeMonomial{};
        }
        size_t open = token.find('(');
        if (open == std::string::npos || token.back() != ')' || open == 0)
            throw ParseError("expected label(offset), got '" + token + "'");
        size_t idx = parse_letter_index(l, token.substr(0, open), token);
        long off = parse_offset(token.substr(open + 1, token.size() - open - 2), token);
        outer_first.push_back(FreeLetter{idx, off});
    }
    return FreeMonomial(std::vector<FreeLetter>(outer_first.rbegin(), outer_first.rend()));
}

FreeElement FreeElement::single(FreeMonomial m, Cyclotomic c) {
    FreeElement x;
    x.add_term(m, c);
    return x;
}

void FreeElement::add_term(const FreeMonomial& m, const Cyclotomic& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

FreeElement FreeElement::scaled(const Cyclotomic& c) const {
    FreeElement out;
    if (c.is_zero()) return out;
    for (const auto& [m, coeff] : terms_) out.terms_.emplace(m, coeff * c);
    return out;
}

std::string FreeElement::str(const Lattice& l) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.str() << ") " << m.str(l);
    }
    return os.str();
}

bool is_zero_by_degree(const FreeMonomial& m) {
    long sum = 0;
    long r = 0;
    for (const auto& x : m.letters()) {
        sum += x.offset;
        ++r;
        if (sum > -r) return true;
    }
    return false;
}

Straightener::Straightener(const Lattice& l, unsigned long jmax) : l_(l), jmax_(jmax) {}

unsigned long Straightener::default_jmax() {
    const char* env = std::getenv("GPSUB_JMAX");
    if (env == nullptr || *env == '\0') return 64;
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
        throw ParseError(std::string("GPSUB_JMAX must be a positive integer, got '") + env + "'");
    return v;
}

const FreeElement& Straightener::normal_form(const FreeMonomial& m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    if (!in_progress_.insert(m).second)
        throw Error("straightening recursion revisited " + m.str(l_));
    FreeElement r = compute(m);
    in_progress_.erase(m);
    return cache_.emplace(m, std::move(r)).first->second;
}

// One step of the adjacent-pair identity at the outermost pair. With inner
// letter (b, n) and outer letter (c, m), N = -(e_c|e_b):
//   swap branch:  eta(c,b) e(N/2) (-1)^j binom(N,j)  ... (c, m+j) (b, n-j)
//   keep branch:           (-1)^j binom(N,j+1)       ... (b, n+1+j) (c, m-1-j)
// Both j-streams die for good once the length-(k-1) prefix offset-sum rises
// above -(k-1) (and, for N a nonnegative integer, once the binomial runs
// out), so the loop below is an exact finite expansion, not a truncation.
FreeElement Straightener::compute(const FreeMonomial& mono) {
    const size_t k = mono.size();
    if (k == 0) return FreeElement::single(mono, l_.field().one());
    if (is_zero_by_degree(mono)) return FreeElement{};
    if (mono.is_canonical()) return FreeElement::single(mono, l_.field().one());

    const FreeLetter last = mono.letters()[k - 1];
    const FreeMonomial pre = mono.prefix(k - 1);
    if (!pre.is_canonical()) {
        FreeElement out;
        for (const auto& [w, c] : normal_form(pre).terms())
            out += normal_form(w.appended(last)).scaled(c);
        return out;
    }

    const FreeLetter inner = mono.letters()[k - 2];
    const Rational n_bound = -l_.gram(last.index, inner.index);
    const Cyclotomic swap_scalar =
        l_.field().root_of_unity(l_.eta_exponent(last.index, inner.index) + n_bound / Rational(2));
    const bool nonneg_int = n_bound.is_nonneg_integer();
    const long n_long = nonneg_int ? n_bound.to_long() : 0;
    const FreeMonomial w2 = mono.prefix(k - 2);
    const long p2 = w2.total_offset();
    const long live_bound = -static_cast<long>(k - 1);

    FreeElement out;
    for (long j = 0;; ++j) {
        const bool dead_swap = (nonneg_int && j > n_long) || (p2 + last.offset + j > live_bound);
        const bool dead_keep =
            (nonneg_int && j + 1 > n_long) || (p2 + inner.offset + 1 + j > live_bound);
        if (dead_swap && dead_keep) break;
        if (static_cast<unsigned long>(j) > jmax_)
            throw StraighteningCapError("straightening expansion for " + mono.str(l_) +
                                        " still live at j = " + std::to_string(j));
        const Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
        if (!dead_swap) {
            const Rational b = gen_binomial(n_bound, static_cast<unsigned long>(j));
            if (!b.is_zero()) {
                FreeMonomial word = w2.appended({last.index, last.offset + j})
                                        .appended({inner.index, inner.offset - j});
                out += normal_form(word).scaled(swap_scalar * l_.field().from_rational(sign * b));
            }
        }
        if (!dead_keep) {
            const Rational b = gen_binomial(n_bound, static_cast<unsigned long>(j + 1));
            if (!b.is_zero()) {
                FreeMonomial word = w2.appended({inner.index, inner.offset + 1 + j})
                                        .appended({last.index, last.offset - 1 - j});
                out += normal_form(word).scaled(l_.field().from_rational(sign * b));
            }
        }
    }
    return out;
}

FreeElement Straightener::straighten(const FreeElement& x) {
    FreeElement out;
    for (const auto& [m, c] : x.terms()) out += normal_form(m).scaled(c);
    return out;
}

FockVector evaluate_fock(const Lattice& l, const FreeMonomial& m, const ChargeVector& lambda) {
    FockVector v = FockVector::single(FockBasisElement({}, lambda), l.field().one());
    const auto& letters = m.letters();
    for (size_t i = 0; i < letters.size() && !v.is_zero(); ++i) {
        Rational mode = Rational(letters[i].offset) - l.pairing_row(letters[i].index, lambda);
        for (size_t j = 0; j < i; ++j) mode -= l.gram(letters[i].index, letters[j].index);
        v = vertex_mode(l, ChargeVector::unit(l.rank(), letters[i].index), mode, v, &lambda);
    }
    return v;
}

FockVector evaluate_fock(const Lattice& l, const FreeElement& x, const ChargeVector& lambda) {
    FockVector out;
    for (const auto& [m, c] : x.terms()) out += evaluate_fock(l, m, lambda).scaled(c);
    return out;
}

FockVector evaluate_fock(const Lattice& l, const FreeMonomial& m) {
    return evaluate_fock(l, m, ChargeVector::zero(l.rank()));
}

FockVector evaluate_fock(const Lattice& l, const FreeElement& x) {
    return evaluate_fock(l, x, ChargeVector::zero(l.rank()));
}

}  // namespace gpsub
