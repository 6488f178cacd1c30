#include "wha/instances.hpp"

namespace wha {

bool FiniteGroupoid::is_identity(int a) const {
    return identity_of[static_cast<size_t>(arrows[static_cast<size_t>(a)].src)] == a;
}

void FiniteGroupoid::validate() const {
    const int n = num_arrows();
    if (num_objects <= 0) throw InvalidGroupoid("groupoid: needs at least one object");
    if (static_cast<int>(identity_of.size()) != num_objects)
        throw InvalidGroupoid("groupoid: one identity arrow per object required");
    if (static_cast<int>(inverse.size()) != n ||
        static_cast<int>(compose.size()) != n)
        throw InvalidGroupoid("groupoid: table sizes do not match the arrow count");
    for (const auto& row : compose)
        if (static_cast<int>(row.size()) != n)
            throw InvalidGroupoid("groupoid: composition table is not square");

    auto in_range = [n](int a) { return a >= 0 && a < n; };
    for (const auto& ar : arrows)
        if (ar.src < 0 || ar.src >= num_objects || ar.tgt < 0 || ar.tgt >= num_objects)
            throw InvalidGroupoid("groupoid: arrow endpoints out of range");
    for (int x = 0; x < num_objects; ++x) {
        const int e = identity_of[static_cast<size_t>(x)];
        if (!in_range(e) || arrows[static_cast<size_t>(e)].src != x ||
            arrows[static_cast<size_t>(e)].tgt != x)
            throw InvalidGroupoid("groupoid: identity arrow has wrong endpoints");
    }
    for (int h = 0; h < n; ++h) {
        const int inv = inverse[static_cast<size_t>(h)];
        if (!in_range(inv) || arrows[static_cast<size_t>(inv)].src != arrows[static_cast<size_t>(h)].tgt ||
            arrows[static_cast<size_t>(inv)].tgt != arrows[static_cast<size_t>(h)].src)
            throw InvalidGroupoid("groupoid: inverse has wrong endpoints");
        for (int k = 0; k < n; ++k) {
            const int hk = compose[static_cast<size_t>(h)][static_cast<size_t>(k)];
            const bool composable =
                arrows[static_cast<size_t>(h)].src == arrows[static_cast<size_t>(k)].tgt;
            if (composable != (hk != -1))
                throw InvalidGroupoid("groupoid: composition defined iff s(h) = t(k)");
            if (hk == -1) continue;
            if (!in_range(hk) ||
                arrows[static_cast<size_t>(hk)].tgt != arrows[static_cast<size_t>(h)].tgt ||
                arrows[static_cast<size_t>(hk)].src != arrows[static_cast<size_t>(k)].src)
                throw InvalidGroupoid("groupoid: composite has wrong endpoints");
        }
        const int et = identity_of[static_cast<size_t>(arrows[static_cast<size_t>(h)].tgt)];
        const int es = identity_of[static_cast<size_t>(arrows[static_cast<size_t>(h)].src)];
        if (compose[static_cast<size_t>(et)][static_cast<size_t>(h)] != h ||
            compose[static_cast<size_t>(h)][static_cast<size_t>(es)] != h)
            throw InvalidGroupoid("groupoid: identities do not act neutrally");
        if (compose[static_cast<size_t>(inv)][static_cast<size_t>(h)] != es ||
            compose[static_cast<size_t>(h)][static_cast<size_t>(inv)] != et)
            throw InvalidGroupoid("groupoid: inverse law fails");
    }
    for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
            const int hk = compose[static_cast<size_t>(h)][static_cast<size_t>(k)];
            if (hk == -1) continue;
            for (int l = 0; l < n; ++l) {
                const int kl = compose[static_cast<size_t>(k)][static_cast<size_t>(l)];
                if (kl == -1) continue;
                if (compose[static_cast<size_t>(hk)][static_cast<size_t>(l)] !=
                    compose[static_cast<size_t>(h)][static_cast<size_t>(kl)])
                    throw InvalidGroupoid("groupoid: associativity fails");
            }
        }
}

FiniteGroupoid FiniteGroupoid::discrete(int n) {
    FiniteGroupoid g;
    g.num_objects = n;
    for (int i = 0; i < n; ++i) {
        g.arrows.push_back({i, i});
        g.inverse.push_back(i);
        g.identity_of.push_back(i);
    }
    g.compose.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        g.compose[static_cast<size_t>(i)][static_cast<size_t>(i)] = i;
    g.validate();
    return g;
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(int n) {
    FiniteGroupoid g;
    g.num_objects = n;
    auto id = [n](int tgt, int src) { return tgt * n + src; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.arrows.push_back({j, i});  // arrow (i <- j)
            g.inverse.push_back(id(j, i));
        }
    for (int i = 0; i < n; ++i) g.identity_of.push_back(id(i, i));
    const int m = n * n;
    g.compose.assign(static_cast<size_t>(m), std::vector<int>(static_cast<size_t>(m), -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                g.compose[static_cast<size_t>(id(i, j))][static_cast<size_t>(id(j, l))] =
                    id(i, l);
    g.validate();
    return g;
}

FiniteGroupoid FiniteGroupoid::cyclic_group(int n) {
    FiniteGroupoid g;
    g.num_objects = 1;
    for (int i = 0; i < n; ++i) {
        g.arrows.push_back({0, 0});
        g.inverse.push_back((n - i) % n);
    }
    g.identity_of.push_back(0);
    g.compose.assign(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.compose[static_cast<size_t>(i)][static_cast<size_t>(j)] = (i + j) % n;
    g.validate();
    return g;
}

namespace {

WeakHopf checked(WeakHopf w, const char* who) {
    const StructureReport rep = check_axioms(w);
    if (!rep.pass())
        throw PostconditionViolated(std::string(who) + ": generated structure fails the axiom suite");
    return w;
}

}  // namespace

WeakHopf pair_groupoid_wha(int n) {
    if (n < 1) throw InvalidGroupoid("pair_groupoid_wha: n must be >= 1");
    const BlockAlgebra a({n}, "M" + std::to_string(n));
    const BlockAlgebra aa = tensor(a, a);
    Matrix dm = Matrix::Zero(aa.dim(), a.dim());
    Matrix km = Matrix::Zero(a.dim(), a.dim());
    Eigen::RowVectorXcd eps = Eigen::RowVectorXcd::Ones(a.dim());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int t = a.basis_offset(0, i, j);
            dm.col(t) = tensor_elem(AlgElement::basis_unit(a, t), AlgElement::basis_unit(a, t))
                            .to_vector();
            km(a.basis_offset(0, j, i), t) = 1.0;
        }
    WeakHopf w;
    w.A = a;
    w.gauge = AlgElement::identity(a);
    w.delta = LinearMapRep(a, aa, std::move(dm));
    w.kappa = LinearMapRep(a, a, std::move(km));
    w.eps = functional_from_row(a, eps);
    return checked(std::move(w), "pair_groupoid_wha");
}

WeakHopf function_algebra_wha(const FiniteGroupoid& g) {
    g.validate();
    const int n = g.num_arrows();
    const BlockAlgebra a(std::vector<int>(static_cast<size_t>(n), 1), "functions");
    const BlockAlgebra aa = tensor(a, a);
    Matrix dm = Matrix::Zero(aa.dim(), a.dim());
    Matrix km = Matrix::Zero(a.dim(), a.dim());
    Eigen::RowVectorXcd eps = Eigen::RowVectorXcd::Zero(a.dim());
    for (int h = 0; h < n; ++h) {
        for (int k = 0; k < n; ++k) {
            const int hk = g.compose[static_cast<size_t>(h)][static_cast<size_t>(k)];
            if (hk != -1) dm(tensor_pair_index(a, a, h, k), hk) += 1.0;
        }
        km(g.inverse[static_cast<size_t>(h)], h) = 1.0;
        if (g.is_identity(h)) eps(h) = 1.0;
    }
    WeakHopf w;
    w.A = a;
    w.gauge = AlgElement::identity(a);
    w.delta = LinearMapRep(a, aa, std::move(dm));
    w.kappa = LinearMapRep(a, a, std::move(km));
    w.eps = functional_from_row(a, eps);
    return checked(std::move(w), "function_algebra_wha");
}

WeakHopf op_tensor_wha(const BlockAlgebra& b) {
    const BlockAlgebra a = tensor(b, b);
    const BlockAlgebra aa = tensor(a, a);
    Matrix dm = Matrix::Zero(aa.dim(), a.dim());
    Matrix km = Matrix::Zero(a.dim(), a.dim());
    Eigen::RowVectorXcd eps = Eigen::RowVectorXcd::Zero(a.dim());
    for (int t = 0; t < a.dim(); ++t) {
        const auto [ui, vi] = tensor_basis_split(b, b, t);
        const AlgElement u = AlgElement::basis_unit(b, ui);
        const AlgElement v = AlgElement::basis_unit(b, vi);

        // Delta(u (x) v) = Sum_g (1/n_g) (u (x) e^g_{i,j}) (x) (e^g_{i,j} (x) v);
        // the first legs carry opposite-algebra coordinates (transposed), which
        // turns (e^g_{j,i})^o into the stored unit e^g_{i,j}.
        Vector col = Vector::Zero(aa.dim());
        for (int gblk = 0; gblk < b.num_blocks(); ++gblk) {
            const int ng = b.block_size(gblk);
            for (int i = 0; i < ng; ++i)
                for (int j = 0; j < ng; ++j) {
                    const AlgElement eij = AlgElement::basis_unit(b, gblk, i, j);
                    col += (tensor_elem(tensor_elem(u, eij), tensor_elem(eij, v)) *
                            Complex(1.0 / ng, 0.0))
                               .to_vector();
                }
        }
        dm.col(t) = col;

        // kappa(x^o (x) y) = y^o (x) x; in stored (transposed-first-leg)
        // coordinates u (x) v -> v^T (x) u^T.
        km.col(t) = tensor_elem(v.transpose_blocks(), u.transpose_blocks()).to_vector();

        // eps(x^o (x) y) = Sum_g n_g Tr(x y | block g) = Sum_g n_g Tr(u^T v | g);
        // the n_g weight is forced by the counit law (eps (x) i) Delta = id:
        // averaging over the n_g^2 units e_{i,j} contributes 1/n_g twice per
        // diagonal hit, so only the weight n_g makes the row sum collapse to 1.
        const BasisIndex bu = b.basis_at(ui);
        const BasisIndex bv = b.basis_at(vi);
        if (bu.block == bv.block && bu.row == bv.row && bu.col == bv.col)
            eps(t) = static_cast<double>(b.block_size(bu.block));
    }
    WeakHopf w;
    w.A = a;
    w.gauge = AlgElement::identity(a);
    w.delta = LinearMapRep(a, aa, std::move(dm));
    w.kappa = LinearMapRep(a, a, std::move(km));
    w.eps = functional_from_row(a, eps);
    return checked(std::move(w), "op_tensor_wha");
}

}  // namespace wha
