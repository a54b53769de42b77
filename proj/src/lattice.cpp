#include "gpsub/lattice.hpp"

#include <cctype>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gpsub/error.hpp"
#include "gpsub/linalg.hpp"

namespace gpsub {

namespace {

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

Rational bilinear(const std::vector<std::vector<Rational>>& m, const ChargeVector& a,
                  const ChargeVector& b) {
    Rational sum = 0;
    for (size_t i = 0; i < a.rank(); ++i) {
        if (a[i].is_zero()) continue;
        Rational row = 0;
        for (size_t j = 0; j < b.rank(); ++j)
            if (!b[j].is_zero()) row += m[i][j] * b[j];
        sum += a[i] * row;
    }
    return sum;
}

Rational det(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    Rational d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pr = col;
        while (pr < n && m[pr][col].is_zero()) ++pr;
        if (pr == n) return Rational(0);
        if (pr != col) {
            std::swap(m[pr], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return d;
}

// e(p/q) notation for roots of unity; returns the exponent.
Rational parse_root_exponent(const std::string& s) {
    if (s.size() < 4 || s.substr(0, 2) != "e(" || s.back() != ')')
        throw ParseError("root of unity must look like e(p/q), got '" + s + "'");
    return Rational::parse(s.substr(2, s.size() - 3));
}

}  // namespace

ChargeVector ChargeVector::unit(size_t rank, size_t i) {
    std::vector<Rational> c(rank, Rational(0));
    c.at(i) = Rational(1);
    return ChargeVector(std::move(c));
}

ChargeVector ChargeVector::parse(const std::string& text) {
    std::vector<Rational> coords;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) coords.push_back(Rational::parse(item));
    if (coords.empty()) throw ParseError("empty charge vector");
    return ChargeVector(std::move(coords));
}

std::string ChargeVector::str() const {
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ",";
        out += c_[i].str();
    }
    return out;
}

bool ChargeVector::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool ChargeVector::is_integral() const {
    for (const auto& x : c_)
        if (!x.is_integer()) return false;
    return true;
}

Rational ChargeVector::height() const {
    Rational h = 0;
    for (const auto& x : c_) h += x;
    return h;
}

ChargeVector ChargeVector::operator-() const {
    ChargeVector r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

ChargeVector& ChargeVector::operator+=(const ChargeVector& o) {
    if (rank() != o.rank()) throw Error("charge vector rank mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

ChargeVector& ChargeVector::operator-=(const ChargeVector& o) {
    if (rank() != o.rank()) throw Error("charge vector rank mismatch");
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

ChargeVector ChargeVector::scaled(const Rational& r) const {
    ChargeVector out = *this;
    for (auto& x : out.c_) x *= r;
    return out;
}

bool operator<(const ChargeVector& a, const ChargeVector& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] < b.c_[i]) return true;
        if (b.c_[i] < a.c_[i]) return false;
    }
    return false;
}

Lattice::Lattice(std::vector<std::string> labels, std::vector<std::vector<Rational>> gram,
                 std::optional<std::vector<std::vector<Rational>>> eta_exponents)
    : labels_(std::move(labels)), gram_(std::move(gram)) {
    rank_ = gram_.size();
    if (rank_ == 0) throw ConstraintError("lattice rank must be positive");
    for (const auto& row : gram_)
        if (row.size() != rank_) throw ConstraintError("gram matrix must be square");
    if (labels_.empty())
        for (size_t i = 0; i < rank_; ++i) labels_.push_back("a" + std::to_string(i));
    if (labels_.size() != rank_) throw ConstraintError("label count must match rank");
    for (const auto& l : labels_)
        if (!is_identifier(l)) throw ConstraintError("label '" + l + "' is not an identifier");
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (labels_[i] == labels_[j] && i != j)
                throw ConstraintError("duplicate label '" + labels_[i] + "'");
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (gram_[i][j] != gram_[j][i]) throw ConstraintError("gram matrix must be symmetric");

    if (eta_exponents) {
        eta_ = std::move(*eta_exponents);
        if (eta_.size() != rank_) throw ConstraintError("eta table must match rank");
        for (const auto& row : eta_)
            if (row.size() != rank_) throw ConstraintError("eta table must be square");
        for (size_t i = 0; i < rank_; ++i) {
            if (!frac_part(eta_[i][i] - gram_[i][i] / Rational(2)).is_zero())
                throw ConstraintError("eta(" + labels_[i] + "," + labels_[i] +
                                      ") must equal e((b|b)/2)");
            for (size_t j = 0; j < rank_; ++j)
                if (!frac_part(eta_[i][j] + eta_[j][i] - gram_[i][j]).is_zero())
                    throw ConstraintError("eta(" + labels_[i] + "," + labels_[j] +
                                          ")*eta(" + labels_[j] + "," + labels_[i] +
                                          ") must equal e((a|b))");
        }
    } else {
        eta_.assign(rank_, std::vector<Rational>(rank_, Rational(0)));
        for (size_t i = 0; i < rank_; ++i)
            for (size_t j = 0; j < rank_; ++j) eta_[i][j] = gram_[i][j] / Rational(2);
    }

    eps_.assign(rank_, std::vector<Rational>(rank_, Rational(0)));
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (i > j) eps_[i][j] = eta_[i][j] - gram_[i][j] / Rational(2);

    // Ambient cyclotomic order: 2 * lcm of all gram and eta denominators.
    // The factor 2 covers the half-integral exponents e(N/2) in the locality
    // and straightening formulas.
    mpz_class l = 1;
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j) {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), gram_[i][j].den().get_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), eta_[i][j].den().get_mpz_t());
        }
    mpz_class order = 2 * l;
    if (!order.fits_ulong_p() || order.get_ui() > 100000)
        throw ConstraintError("cyclotomic order " + order.get_str() + " too large");
    field_ = std::make_shared<CyclotomicField>(order.get_ui());

    linalg::Matrix<Rational> g(rank_, rank_, Rational(0));
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j) g.at(i, j) = gram_[i][j];
    if (auto inv = linalg::inverse(g, Rational(0), Rational(1))) {
        for (size_t j = 0; j < rank_; ++j) {
            std::vector<Rational> col(rank_);
            for (size_t i = 0; i < rank_; ++i) col[i] = inv->at(i, j);
            dual_basis_.emplace_back(std::move(col));
        }
    }

    positive_definite_ = true;
    for (size_t k = 1; k <= rank_; ++k) {
        std::vector<std::vector<Rational>> minor(k, std::vector<Rational>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) minor[i][j] = gram_[i][j];
        if (!(det(std::move(minor)) > Rational(0))) {
            positive_definite_ = false;
            break;
        }
    }
}

size_t Lattice::index_of_label(const std::string& label) const {
    for (size_t i = 0; i < rank_; ++i)
        if (labels_[i] == label) return i;
    throw ParseError("unknown letter label '" + label + "'");
}

Rational Lattice::pairing(const ChargeVector& a, const ChargeVector& b) const {
    return bilinear(gram_, a, b);
}

Rational Lattice::pairing_row(size_t i, const ChargeVector& b) const {
    Rational sum = 0;
    for (size_t j = 0; j < rank_; ++j)
        if (!b[j].is_zero()) sum += gram_[i][j] * b[j];
    return sum;
}

Rational Lattice::locality_bound(const ChargeVector& a, const ChargeVector& b) const {
    return -pairing(a, b);
}

Rational Lattice::eta_exponent(const ChargeVector& a, const ChargeVector& b) const {
    return bilinear(eta_, a, b);
}

Rational Lattice::omega_exponent(const ChargeVector& a, const ChargeVector& b) const {
    return eta_exponent(a, b) - pairing(a, b) / Rational(2);
}

Rational Lattice::epsilon_exponent(const ChargeVector& a, const ChargeVector& b) const {
    return bilinear(eps_, a, b);
}

Cyclotomic Lattice::eta(const ChargeVector& a, const ChargeVector& b) const {
    return field_->root_of_unity(eta_exponent(a, b));
}

Cyclotomic Lattice::omega(const ChargeVector& a, const ChargeVector& b) const {
    return field_->root_of_unity(omega_exponent(a, b));
}

Cyclotomic Lattice::epsilon(const ChargeVector& a, const ChargeVector& b) const {
    return field_->root_of_unity(epsilon_exponent(a, b));
}

bool Lattice::epsilon_trivial() const {
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j)
            if (!frac_part(eps_[i][j]).is_zero()) return false;
    return true;
}

const std::vector<ChargeVector>& Lattice::dual_basis() const {
    if (dual_basis_.empty()) throw SingularGramError();
    return dual_basis_;
}

Lattice Lattice::dual() const {
    const auto& db = dual_basis();  // throws when gram is singular
    std::vector<std::vector<Rational>> dgram(rank_, std::vector<Rational>(rank_));
    for (size_t i = 0; i < rank_; ++i)
        for (size_t j = 0; j < rank_; ++j) dgram[i][j] = db[j][i];
    std::vector<std::string> dlabels;
    for (const auto& l : labels_) dlabels.push_back(l + "v");
    return Lattice(std::move(dlabels), std::move(dgram));
}

Lattice Lattice::named_or_file(const std::string& name) {
    auto cartan = [](size_t n) {
        std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, Rational(0)));
        for (size_t i = 0; i < n; ++i) {
            g[i][i] = 2;
            if (i + 1 < n) g[i][i + 1] = g[i + 1][i] = -1;
        }
        return g;
    };
    if (name == "A1") return Lattice({}, cartan(1));
    if (name == "A2") return Lattice({}, cartan(2));
    if (name == "A3") return Lattice({}, cartan(3));
    if (name.rfind("rank1:", 0) == 0)
        return Lattice({}, {{Rational::parse(name.substr(6))}});
    std::ifstream in(name);
    if (!in) throw ParseError("no built-in lattice or readable file named '" + name + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

Lattice Lattice::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("lattice file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("gram"))
        throw ParseError("lattice file must be an object with a \"gram\" key");
    auto entry = [](const nlohmann::json& v) {
        if (v.is_string()) return Rational::parse(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        throw ParseError("matrix entries must be \"p/q\" strings or integers");
    };
    std::vector<std::vector<Rational>> gram;
    for (const auto& row : j.at("gram")) {
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(entry(v));
        gram.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::optional<std::vector<std::vector<Rational>>> eta;
    if (j.contains("eta")) {
        std::vector<std::vector<Rational>> h;
        for (const auto& row : j.at("eta")) {
            std::vector<Rational> r;
            for (const auto& v : row) {
                if (!v.is_string()) throw ParseError("eta entries must be \"e(p/q)\" strings");
                r.push_back(parse_root_exponent(v.get<std::string>()));
            }
            h.push_back(std::move(r));
        }
        eta = std::move(h);
    }
    return Lattice(std::move(labels), std::move(gram), std::move(eta));
}

std::string Lattice::to_json_text() const {
    nlohmann::ordered_json j;
    j["labels"] = labels_;
    nlohmann::ordered_json gram = nlohmann::ordered_json::array();
    for (const auto& row : gram_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& x : row) r.push_back(x.str());
        gram.push_back(r);
    }
    j["gram"] = gram;
    nlohmann::ordered_json eta = nlohmann::ordered_json::array();
    for (const auto& row : eta_) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& x : row) r.push_back("e(" + frac_part(x).str() + ")");
        eta.push_back(r);
    }
    j["eta"] = eta;
    return j.dump();
}

}  // namespace gpsub
