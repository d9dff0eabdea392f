#include "chiral/lie.hpp"

#include "chiral/error.hpp"
#include "chiral/json_util.hpp"

#include <map>
#include <tuple>

namespace chiral {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

std::vector<Rational> flatten(const Matrix& m) {
    std::vector<Rational> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis_labels, std::vector<Rational> structure,
                       Matrix form, LieFlags flags)
    : name_(std::move(name)), labels_(std::move(basis_labels)), structure_(std::move(structure)),
      form_(std::move(form)), flags_(flags) {
    const std::size_t n = dim();
    if (n == 0) throw ConfigError("Lie algebra must have positive dimension");
    if (structure_.size() != n * n * n) throw ConfigError("structure tensor has wrong size");
    if (form_.rows() != n || form_.cols() != n) throw ConfigError("form has wrong shape");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (f(i, j, k) != -f(j, i, k))
                    throw AntisymmetryViolation("f" + triple(i, j, k) + " != -f" + triple(j, i, k));

    // [x_i,[x_j,x_k]] + [x_j,[x_k,x_i]] + [x_k,[x_i,x_j]] = 0, component m.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t m = 0; m < n; ++m) {
                    Rational s = 0;
                    for (std::size_t l = 0; l < n; ++l)
                        s += f(j, k, l) * f(i, l, m) + f(k, i, l) * f(j, l, m) + f(i, j, l) * f(k, l, m);
                    if (sgn(s) != 0) throw JacobiViolation("Jacobi identity fails on basis triple " + triple(i, j, k));
                }

    if (!form_.is_symmetric()) throw FormNotInvariant("form is not symmetric");
    // <[x_a,x_b],x_c> + <x_b,[x_a,x_c]> = 0
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                Rational s = 0;
                for (std::size_t l = 0; l < n; ++l) s += f(a, b, l) * form_(l, c) + f(a, c, l) * form_(b, l);
                if (sgn(s) != 0) throw FormNotInvariant("form is not ad-invariant on triple " + triple(a, b, c));
            }

    if (flags_.nondegenerate && form_.rank() != n)
        throw SingularFormWhenNondegenerateRequired("form of '" + name_ + "' is singular");
    if (flags_.abelian)
        for (const auto& x : structure_)
            if (sgn(x) != 0) throw ConfigError("algebra flagged abelian has a nonzero bracket");
}

std::vector<Rational> LieAlgebra::bracket(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
    const std::size_t n = dim();
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(x[i]) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(y[j]) == 0) continue;
            Rational c = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(f(i, j, k)) != 0) out[k] += c * f(i, j, k);
        }
    }
    return out;
}

Matrix LieAlgebra::ad(std::size_t i) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = 0; k < dim(); ++k) m(k, j) = f(i, j, k);
    return m;
}

Matrix LieAlgebra::coad(std::size_t i) const { return ad(i).transpose().scaled(-1); }

Matrix LieAlgebra::form_dual_basis() const {
    // form(xi~^i, xi_j) = sum_l D(i,l) form(l,j) = delta_ij  =>  D = form^{-1}.
    return form_.inverse();
}

LieAlgebra LieAlgebra::with_form(Matrix form, bool nondegenerate) const {
    LieFlags flags = flags_;
    flags.nondegenerate = nondegenerate;
    return LieAlgebra(name_, labels_, structure_, std::move(form), flags);
}

Representation::Representation(const LieAlgebra& algebra, std::vector<Matrix> matrices,
                               std::vector<std::string> labels, bool claim_faithful)
    : matrices_(std::move(matrices)), labels_(std::move(labels)) {
    if (matrices_.size() != algebra.dim())
        throw RepresentationViolation("expected one matrix per basis element");
    const std::size_t n = matrices_.front().rows();
    if (n == 0) throw RepresentationViolation("representation must have positive dimension");
    for (const auto& m : matrices_)
        if (m.rows() != n || m.cols() != n) throw RepresentationViolation("representation matrices must be square");
    if (labels_.empty())
        for (std::size_t k = 0; k < n; ++k) labels_.push_back("x" + std::to_string(k + 1));
    if (labels_.size() != n) throw RepresentationViolation("label count does not match dimension");

    for (std::size_t i = 0; i < algebra.dim(); ++i)
        for (std::size_t j = 0; j < algebra.dim(); ++j) {
            Matrix lhs(n, n);
            for (std::size_t k = 0; k < algebra.dim(); ++k)
                if (sgn(algebra.f(i, j, k)) != 0) lhs = lhs + matrices_[k].scaled(algebra.f(i, j, k));
            Matrix rhs = matrices_[i] * matrices_[j] - matrices_[j] * matrices_[i];
            if (!(lhs == rhs))
                throw RepresentationViolation("rho([xi_" + std::to_string(i) + ",xi_" + std::to_string(j) +
                                              "]) != [rho(xi_i), rho(xi_j)]");
        }
    if (claim_faithful && !is_faithful()) throw RepresentationViolation("representation claimed faithful has a kernel");
}

Matrix Representation::trace_form() const {
    const std::size_t d = matrices_.size();
    Matrix form(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) form(i, j) = (matrices_[i] * matrices_[j]).trace();
    return form;
}

bool Representation::is_faithful() const {
    std::vector<std::vector<Rational>> vs;
    for (const auto& m : matrices_) vs.push_back(flatten(m));
    return rank_of_vectors(vs) == matrices_.size();
}

SubalgebraEmbedding::SubalgebraEmbedding(const LieAlgebra& ambient, Matrix inclusion) : inclusion_(std::move(inclusion)) {
    if (inclusion_.cols() == 0) {
        inclusion_ = Matrix(ambient.dim(), 0);
        return;
    }
    if (inclusion_.rows() != ambient.dim()) throw NotASubalgebra("inclusion has wrong number of rows");
    if (inclusion_.rank() != inclusion_.cols()) throw NotASubalgebra("inclusion columns are dependent");
    std::vector<std::vector<Rational>> cols;
    for (std::size_t c = 0; c < inclusion_.cols(); ++c) {
        std::vector<Rational> v(ambient.dim());
        for (std::size_t r = 0; r < ambient.dim(); ++r) v[r] = inclusion_(r, c);
        cols.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < cols.size(); ++a)
        for (std::size_t b = a + 1; b < cols.size(); ++b) {
            auto with = cols;
            with.push_back(ambient.bracket(cols[a], cols[b]));
            if (rank_of_vectors(with) != cols.size()) throw NotASubalgebra("span is not closed under the bracket");
        }
}

Matrix killing_form(const LieAlgebra& algebra) {
    const std::size_t n = algebra.dim();
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < n; ++i) ads.push_back(algebra.ad(i));
    Matrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k(i, j) = (ads[i] * ads[j]).trace();
    return k;
}

bool coadjoint_span(const LieAlgebra& algebra, const SubalgebraEmbedding& sub) {
    const std::size_t n = algebra.dim();
    if (algebra.form().rank() != n) throw DegenerateForm("coadjoint_span needs a nondegenerate form");
    // Annihilator of h: covectors phi with phi . inclusion = 0.
    std::vector<std::vector<Rational>> annihilator;
    if (sub.dim() == 0) {
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Rational> e(n);
            e[k] = 1;
            annihilator.push_back(std::move(e));
        }
    } else {
        annihilator = nullspace(sub.inclusion().transpose());
    }
    std::vector<std::vector<Rational>> images;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& phi : annihilator) {
            // (ad*_{xi_i} phi)(xi_j) = -phi([xi_i, xi_j])
            std::vector<Rational> out(n);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) out[j] -= phi[k] * algebra.f(i, j, k);
            images.push_back(std::move(out));
        }
    }
    if (images.empty()) return false;
    return rank_of_vectors(images) == n;
}

LieAlgebra abelian(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("t" + std::to_string(i + 1));
    LieFlags flags;
    flags.abelian = true;
    flags.nondegenerate = true;
    return LieAlgebra("abelian" + std::to_string(n), labels, std::vector<Rational>(n * n * n), Matrix::identity(n),
                      flags);
}

LieAlgebra from_matrix_basis(std::string name, std::vector<std::string> labels, const std::vector<Matrix>& basis,
                             LieFlags flags) {
    const std::size_t d = basis.size();
    const std::size_t entries = basis.front().rows() * basis.front().cols();
    Matrix coords(entries, d);
    for (std::size_t c = 0; c < d; ++c) {
        auto v = flatten(basis[c]);
        for (std::size_t r = 0; r < entries; ++r) coords(r, c) = v[r];
    }
    std::vector<Rational> structure(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
            auto x = solve_linear(coords, flatten(comm));
            if (!x) throw NotASubalgebra("matrix basis of '" + name + "' is not closed under commutator");
            for (std::size_t k = 0; k < d; ++k) structure[(i * d + j) * d + k] = (*x)[k];
        }
    LieFlags scratch_flags = flags;
    scratch_flags.nondegenerate = false;
    LieAlgebra scratch(name, labels, structure, Matrix(d, d), scratch_flags);
    Matrix kf = killing_form(scratch);
    return LieAlgebra(std::move(name), std::move(labels), std::move(structure), kf, flags);
}

namespace {

Matrix unit(std::size_t n, std::size_t r, std::size_t c) {
    Matrix m(n, n);
    m(r, c) = 1;
    return m;
}

std::vector<Matrix> sl2_matrices() {
    Matrix h(2, 2);
    h(0, 0) = 1;
    h(1, 1) = -1;
    return {unit(2, 0, 1), h, unit(2, 1, 0)};
}

std::vector<Matrix> sl3_matrices() {
    Matrix h1(3, 3), h2(3, 3);
    h1(0, 0) = 1;
    h1(1, 1) = -1;
    h2(1, 1) = 1;
    h2(2, 2) = -1;
    return {unit(3, 0, 1), unit(3, 0, 2), unit(3, 1, 2), unit(3, 1, 0), unit(3, 2, 0), unit(3, 2, 1), h1, h2};
}

LieFlags simple_flags() {
    LieFlags flags;
    flags.simple = true;
    flags.semisimple = true;
    flags.nondegenerate = true;
    return flags;
}

}  // namespace

LieAlgebra sl2() { return from_matrix_basis("sl2", {"e", "h", "f"}, sl2_matrices(), simple_flags()); }

LieAlgebra sl3() {
    return from_matrix_basis("sl3", {"E12", "E13", "E23", "E21", "E31", "E32", "H1", "H2"}, sl3_matrices(),
                             simple_flags());
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
    std::vector<Rational> structure(n * n * n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j)
            for (std::size_t k = 0; k < na; ++k) structure[(i * n + j) * n + k] = a.f(i, j, k);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            for (std::size_t k = 0; k < nb; ++k) structure[((na + i) * n + na + j) * n + na + k] = b.f(i, j, k);
    Matrix form(n, n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) form(i, j) = a.form()(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) form(na + i, na + j) = b.form()(i, j);
    std::vector<std::string> labels;
    for (const auto& l : a.basis_labels()) labels.push_back(l + "_1");
    for (const auto& l : b.basis_labels()) labels.push_back(l + "_2");
    LieFlags flags;
    flags.abelian = a.flags().abelian && b.flags().abelian;
    flags.semisimple = a.flags().semisimple && b.flags().semisimple;
    flags.nondegenerate = a.flags().nondegenerate && b.flags().nondegenerate;
    return LieAlgebra(a.name() + "+" + b.name(), labels, structure, form, flags);
}

LieAlgebra sl2_sum_sl2() { return direct_sum(sl2(), sl2()); }

std::optional<LieAlgebra> builtin_algebra(const std::string& name) {
    if (name == "sl2") return sl2();
    if (name == "sl3") return sl3();
    if (name == "sl2+sl2") return sl2_sum_sl2();
    if (name.rfind("abelian", 0) == 0 && name.size() > 7) {
        std::size_t n = 0;
        for (std::size_t i = 7; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
            n = n * 10 + static_cast<std::size_t>(name[i] - '0');
        }
        if (n == 0) return std::nullopt;
        return abelian(n);
    }
    return std::nullopt;
}

Representation sl2_fundamental(const LieAlgebra& sl2_algebra) {
    return Representation(sl2_algebra, sl2_matrices(), {"x1", "x2"}, true);
}

Representation sl3_fundamental(const LieAlgebra& sl3_algebra) {
    return Representation(sl3_algebra, sl3_matrices(), {"x1", "x2", "x3"}, true);
}

Representation abelian_weights(const LieAlgebra& algebra, const std::vector<std::vector<Rational>>& weights) {
    const std::size_t n = weights.size();
    std::vector<Matrix> ms(algebra.dim(), Matrix(n, n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < algebra.dim(); ++i) ms[i](k, k) = weights[k][i];
    return Representation(algebra, std::move(ms));
}

Representation load_representation(const LieAlgebra& algebra, const nlohmann::json& descriptor) {
    if (!descriptor.contains("matrices")) throw ParseError("representation needs \"matrices\"");
    std::vector<Matrix> ms;
    for (const auto& m : descriptor.at("matrices")) ms.push_back(matrix_from_json(m));
    std::vector<std::string> labels;
    if (descriptor.contains("labels")) labels = descriptor.at("labels").get<std::vector<std::string>>();
    if (descriptor.contains("dim") && !ms.empty() && descriptor.at("dim").get<std::size_t>() != ms.front().rows())
        throw ParseError("representation \"dim\" does not match its matrices");
    bool faithful = descriptor.value("faithful", false);
    return Representation(algebra, std::move(ms), std::move(labels), faithful);
}

LieAlgebra load_algebra(const nlohmann::json& descriptor) {
    if (descriptor.is_string()) {
        auto builtin = builtin_algebra(descriptor.get<std::string>());
        if (!builtin) throw ConfigError("unknown built-in algebra '" + descriptor.get<std::string>() + "'");
        return *builtin;
    }
    const std::size_t n = descriptor.at("dim").get<std::size_t>();
    std::string name = descriptor.value("name", std::string("custom"));
    std::vector<std::string> labels;
    if (descriptor.contains("basis")) labels = descriptor.at("basis").get<std::vector<std::string>>();
    else
        for (std::size_t i = 0; i < n; ++i) labels.push_back("xi" + std::to_string(i + 1));
    if (labels.size() != n) throw ParseError("basis label count does not match dim");

    std::vector<Rational> structure(n * n * n);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> given;
    for (const auto& entry : descriptor.value("brackets", nlohmann::json::array())) {
        if (!entry.is_array() || entry.size() != 4) throw ParseError("bracket entries are [i,j,k,value]");
        auto i = entry[0].get<std::size_t>(), j = entry[1].get<std::size_t>(), k = entry[2].get<std::size_t>();
        if (i >= n || j >= n || k >= n) throw ParseError("bracket index out of range");
        given[{i, j, k}] = rational_from_json(entry[3]);
    }
    for (const auto& [key, value] : given) {
        auto [i, j, k] = key;
        structure[(i * n + j) * n + k] = value;
        if (!given.count({j, i, k})) structure[(j * n + i) * n + k] = -value;
    }

    LieFlags flags;
    for (const auto& flag : descriptor.value("flags", nlohmann::json::array())) {
        auto s = flag.get<std::string>();
        if (s == "abelian") flags.abelian = true;
        else if (s == "simple") flags.simple = flags.semisimple = true;
        else if (s == "semisimple") flags.semisimple = true;
        else if (s == "nondegenerate") flags.nondegenerate = true;
        else throw ParseError("unknown flag '" + s + "'");
    }

    // Validate the bracket first with a zero form, then attach the real one.
    LieFlags plain = flags;
    plain.nondegenerate = false;
    LieAlgebra bare(name, labels, structure, Matrix(n, n), plain);

    Matrix form(n, n);
    if (!descriptor.contains("form")) {
        form = killing_form(bare);
    } else if (const auto& f = descriptor.at("form"); f.is_string()) {
        if (f.get<std::string>() != "killing") throw ParseError("form string must be \"killing\"");
        form = killing_form(bare);
    } else if (f.is_object()) {
        if (!f.contains("from_representation")) throw ParseError("form object needs \"from_representation\"");
        form = load_representation(bare, f.at("from_representation")).trace_form();
    } else {
        form = matrix_from_json(f);
    }
    return bare.with_form(std::move(form), flags.nondegenerate);
}

nlohmann::json algebra_to_json(const LieAlgebra& algebra) {
    const std::size_t n = algebra.dim();
    nlohmann::json j;
    j["name"] = algebra.name();
    j["dim"] = n;
    j["basis"] = algebra.basis_labels();
    auto brackets = nlohmann::json::array();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj)
            for (std::size_t k = 0; k < n; ++k)
                if (sgn(algebra.f(i, jj, k)) != 0)
                    brackets.push_back({i, jj, k, rational_to_json(algebra.f(i, jj, k))});
    j["brackets"] = brackets;
    j["form"] = matrix_to_json(algebra.form());
    auto flags = nlohmann::json::array();
    if (algebra.flags().abelian) flags.push_back("abelian");
    if (algebra.flags().simple) flags.push_back("simple");
    else if (algebra.flags().semisimple) flags.push_back("semisimple");
    if (algebra.flags().nondegenerate) flags.push_back("nondegenerate");
    j["flags"] = flags;
    return j;
}

}  // namespace chiral
