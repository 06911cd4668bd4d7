// Units of multiquadratic orders: Pell units, the roots of unity of Q^(2),
// the u^(2N) lemma and the Hasse-index factorisation u^2 = zeta * w.
#pragma once

#include "mqw/element.hpp"

#include <optional>
#include <span>
#include <vector>

namespace mqw {

struct PellSolution {
    Integer d;
    Integer x, y;
    int norm_sign = 1;
};

/// Least solution of x^2 - d y^2 = +-1 from the continued fraction of sqrt(d).
PellSolution pell_fundamental(const Integer& d);
/// x + y sqrt(d) inside the field generated by sqrt(d) (or inside `field`).
Element pell_unit(const PellSolution& s);
Element pell_unit(const PellSolution& s, const FieldSpec& field);

/// Every a coprime to m satisfies a^2 = 1 (mod m), i.e. (Z/m)^x has exponent
/// dividing 2, which is exactly when Q(zeta_m) is multiquadratic.
bool admits_primitive_root(unsigned m);

/// Closed form of exp(2 pi i / m) for m | 24, over Q(i, sqrt2, sqrt3).
Element primitive_root(unsigned m);
FieldSpec roots_host_field();

struct RootsOfUnityReport {
    unsigned order_N = 0;
    std::vector<unsigned> admissible_orders;
    /// zeta^k for k = 0..N-1 with zeta = exp(2 pi i / N)
    std::vector<Element> roots;
    std::vector<unsigned> orders;
    FieldSpec host_field;
};

/// Scans m <= bound (bound >= 24) and builds the exact root group.
RootsOfUnityReport roots_of_unity(unsigned bound = 200);

struct BoundaryRecord {
    Element root;
    Element t;  // 2 + w + 1/w
    bool real = false;
    bool in_closed = false;  // every conjugate in [0, 4]
    bool strict = false;     // every conjugate in (0, 4)
};
std::vector<BoundaryRecord> rou_boundary_check(const RootsOfUnityReport& report);

struct UnitWitness {
    Element u;
    Element inverse;
    int norm_value = 1;
};

/// A witness iff x is integral with norm +-1.
std::optional<UnitWitness> is_unit(const Element& x);

struct UnitPowerRecord {
    Element unit;
    unsigned N = 0;
    Element power;  // u^(2N)
    bool in_real_subfield = false;
    bool is_unit = false;
    bool passed() const { return in_real_subfield && is_unit; }
};
UnitPowerRecord unit_power_in_K(const UnitWitness& u, unsigned N);

struct HasseFactorization {
    Element zeta;
    unsigned zeta_exponent = 0;  // zeta = roots[zeta_exponent]
    Element w;                   // real unit with u^2 = zeta * w
};

/// Searches the root group for u^2 * zeta^-1 real and a unit. A factor w
/// with positive principal embedding is preferred, then the lowest exponent.
std::optional<HasseFactorization> hasse_square_decompose(const UnitWitness& u, const RootsOfUnityReport& roots);

/// Deterministic sample zeta24^a * eps_d1^b1 * eps_d2^b2, |b| <= 3, lifted to
/// Q(i, sqrt p : p | d for d in ds).
std::vector<UnitWitness> unit_sample(std::size_t count, std::span<const long> pell_radicands);
/// The acceptance sample: 50 units over Q(i, sqrt2, sqrt3) from d in {2, 3, 6}.
std::vector<UnitWitness> default_unit_sample();

/// Audits over a sample (OpenMP) and their serial references.
std::vector<UnitPowerRecord> audit_unit_powers(std::span<const UnitWitness> sample, unsigned N);
std::vector<UnitPowerRecord> audit_unit_powers_serial(std::span<const UnitWitness> sample, unsigned N);
std::vector<std::optional<HasseFactorization>> audit_hasse(std::span<const UnitWitness> sample,
                                                           const RootsOfUnityReport& roots);
std::vector<std::optional<HasseFactorization>> audit_hasse_serial(std::span<const UnitWitness> sample,
                                                                  const RootsOfUnityReport& roots);

}  // namespace mqw
