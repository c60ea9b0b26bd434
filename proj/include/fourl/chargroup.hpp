#pragma once
#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fourl/arith.hpp"

namespace fourl {

using cplx = std::complex<double>;

// e(num/den) with 0 <= num < den. Kept exact so values can be re-evaluated
// at higher precision.
struct Angle {
    i64 num = 0;
    i64 den = 1;
};
Angle addAngles(Angle a, Angle b);
Angle negateAngle(Angle a);
cplx rootOfUnity(Angle a);

// Unit group of Z/mZ as a product of cyclic factors, one or two per prime power.
class UnitGroup {
public:
    static std::shared_ptr<const UnitGroup> get(i64 modulus);

    i64 modulus() const { return modulus_; }
    const std::vector<i64>& cyclicOrders() const { return orders_; }
    const std::vector<i64>& generators() const { return gens_; }
    i64 exponent() const { return exponent_; }
    i64 order() const { return order_; }

    // Exponent vector of n over generators(); false when gcd(n, m) > 1.
    bool dlog(i64 n, i64* out) const;
    std::vector<i64> dlog(i64 n) const;

    struct Component {
        i64 p;
        int k;
        i64 pk;
        int firstGen;  // index into generators()
        int genCount;  // 0, 1 or 2
        std::vector<std::int32_t> table;  // residue mod pk -> packed dlog, -1 if not a unit
    };
    const std::vector<Component>& components() const { return comps_; }
    const cplx& root(i64 k) const { return roots_[static_cast<std::size_t>(k)]; }

private:
    explicit UnitGroup(i64 modulus);
    i64 modulus_;
    i64 order_ = 1;
    i64 exponent_ = 1;
    std::vector<i64> orders_;
    std::vector<i64> gens_;
    std::vector<Component> comps_;
    std::vector<cplx> roots_;  // e(k/exponent)
};

class DirichletCharacter {
public:
    DirichletCharacter();  // trivial character mod 1
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<i64> exponents);
    static DirichletCharacter principal(i64 modulus);

    i64 modulus() const { return group_->modulus(); }
    const std::vector<i64>& exponents() const { return exps_; }
    const UnitGroup& group() const { return *group_; }
    std::shared_ptr<const UnitGroup> groupPtr() const { return group_; }

    bool isEven() const { return even_; }
    bool isPrimitive() const { return conductor_ == modulus(); }
    bool isPrincipal() const;
    i64 conductor() const { return conductor_; }
    i64 order() const { return order_; }

    std::optional<Angle> angle(i64 n) const;
    cplx operator()(i64 n) const;
    DirichletCharacter conj() const;
    // Values at residues 0..m-1.
    std::vector<cplx> table() const;
    std::string id() const;

    bool operator==(const DirichletCharacter& o) const;
    bool operator!=(const DirichletCharacter& o) const { return !(*this == o); }

private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<i64> exps_;
    std::vector<i64> scaled_;  // exps_[i] * exponent / order_i
    bool even_ = true;
    i64 conductor_ = 1;
    i64 order_ = 1;
};

// Inverse of DirichletCharacter::id(): "m:e1,e2,...". UsageError on malformed input.
DirichletCharacter characterFromId(const std::string& id);

// Conductor by induction from each divisor: slow, used as a reference.
i64 conductorByInduction(const DirichletCharacter& chi);

// Builds the character mod `modulus` whose value at each generator is given.
DirichletCharacter characterFromGeneratorAngles(i64 modulus, const std::vector<Angle>& genAngles);
// Character mod lcm(a, b) equal to a(n) b(n) on units.
DirichletCharacter multiply(const DirichletCharacter& a, const DirichletCharacter& b);
// Character mod M (a multiple of the modulus) induced by chi.
DirichletCharacter induce(const DirichletCharacter& chi, i64 M);
// The primitive character mod conductor(chi) inducing chi.
DirichletCharacter primitiveOf(const DirichletCharacter& chi);

std::vector<DirichletCharacter> characterTable(i64 m);
std::vector<DirichletCharacter> evenPrimitiveCharacters(i64 m);
cplx evalChar(const DirichletCharacter& chi, i64 n);

cplx gaussSum(const DirichletCharacter& chi);
cplx epsilon(const DirichletCharacter& chi);

// chi = chi1 * chi2 with chi1 mod m1 and chi2 mod m2.
std::pair<DirichletCharacter, DirichletCharacter> crtFactor(const DirichletCharacter& chi, i64 m1,
                                                            i64 m2);

cplx convolve(const DirichletCharacter& a, const DirichletCharacter& b, i64 n);

cplx kloosterman(i64 m, i64 n, i64 c);
cplx hybridKloosterman(const DirichletCharacter& chi, i64 m, i64 n, i64 c);
cplx ramanujan(i64 q, i64 n);

struct MultKResult {
    double residual;         // with the phi1(d) phi2(c) factor
    double printedResidual;  // the product of the two sums alone
    cplx lhs;
    cplx rhs;
};
// Twisted multiplicativity of S_phi(a, b; cd) for coprime moduli c, d.
MultKResult verifyMultK(const DirichletCharacter& phi1, const DirichletCharacter& phi2, i64 a, i64 b);

// Experiment configuration for the twisted fourth moment.
struct Quadruple {
    i64 q = 5;
    std::array<i64, 4> D{1, 1, 1, 1};
    std::array<DirichletCharacter, 4> chi{};
    double t = 0.0;
    std::array<i64, 2> ell{1, 1};

    double qhat() const;
    i64 Dprod() const { return D[0] * D[1] * D[2] * D[3]; }
    // Throws UsageError naming the first violated condition.
    void validate() const;
};

// The first even primitive character of each modulus in D (index 0 for each),
// or the characters picked by `choice` (index into evenPrimitiveCharacters).
Quadruple makeQuadruple(i64 q, std::array<i64, 4> D, double t, std::array<i64, 2> ell,
                        std::array<int, 4> choice = {0, 0, 0, 0});

}  // namespace fourl
