#pragma once

#include <map>

#include "hmcat/linalg.hpp"

namespace hmcat {

/* Z-graded complex of exact vector spaces. dir = +1 for cochain complexes
 * (differential raises degree), -1 for chain complexes. Degrees outside the
 * stored range are zero. */
struct Complex {
    Field field = Field::rationals();
    int dir = +1;
    std::map<int, std::size_t> dims;
    std::map<int, Mat> diff; /* diff[n] : degree n -> degree n+dir */

    std::size_t dim_at(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    Mat diff_at(int n) const {
        auto it = diff.find(n);
        if (it != diff.end())
            return it->second;
        return Mat(dim_at(n + dir), dim_at(n));
    }

    /* Shape consistency and d∘d = 0 at every stored degree. */
    void validate() const;

    /* dim ker(diff n) - rank(diff n-dir). Requires the stored range to cover
     * the outgoing differential. */
    std::size_t homology_dim(int n) const;
    std::vector<std::size_t> homology_dims(int lo, int hi) const;
};

/* Chosen basis of homology at one degree: kernel vectors completed modulo the
 * incoming image, deterministic given the input ordering. */
struct HomologyBasis {
    int degree = 0;
    SubQuotient classes;

    static HomologyBasis at(const Complex& c, int n);
};

/* Degreewise-split short exact sequence of complexes with explicit injection
 * and projection matrices. */
struct ComplexSES {
    Complex sub, total, quot;
    std::map<int, Mat> inj;  /* sub_n -> total_n */
    std::map<int, Mat> proj; /* total_n -> quot_n */

    Mat inj_at(int n) const;
    Mat proj_at(int n) const;

    /* Throws IllFormedSES unless, at every stored degree: proj∘inj = 0, inj has
     * full column rank, proj has full row rank, rank(inj) + rank(proj) equals
     * the total dimension, and both commute with the differentials. */
    void validate() const;
};

/* Matrix of the connecting map H^n(quot) -> H^{n+dir}(sub) on the chosen
 * homology bases: lift through proj, apply the total differential, pull back
 * through inj. The induced map on classes does not depend on the lift. */
Mat snake_connecting(const ComplexSES& ses, int n, const SolveOptions& opts = {});

/* Matrix of the map induced on homology at degree n by a chain map given
 * degreewise by f (zero where absent). */
Mat induced_on_homology(const Complex& src, const Complex& dst, const std::map<int, Mat>& f,
                        int n);

struct LESTerm {
    std::string label;
    std::size_t dim = 0;
};

struct LESPosition {
    std::size_t index = 0; /* term position the verdict refers to */
    std::size_t incoming_rank = 0;
    std::size_t outgoing_nullity = 0;
    bool exact = false;
};

struct LESReport {
    std::vector<LESTerm> terms;
    std::vector<Mat> maps; /* maps[i] : terms[i] -> terms[i+1] */
    std::vector<LESPosition> positions;
    bool all_exact() const {
        for (const auto& p : positions)
            if (!p.exact)
                return false;
        return true;
    }
};

/* Long exact sequence of a SES of cochain complexes,
 *   0 -> H^0(sub) -> H^0(total) -> H^0(quot) -> H^1(sub) -> ...
 * assembled with actual induced maps and connecting maps, with exactness
 * checked at every term from H^0(sub) through H^max(quot). The final map lands
 * in H^{max+1}(sub), so the complexes must store degrees up to max+2. */
LESReport assemble_les(const ComplexSES& ses, int max_degree, const SolveOptions& opts = {});

}  // namespace hmcat
