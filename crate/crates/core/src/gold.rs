//! Closed-form c-BCT entries of the Gold map F(x) = x^(2^k+1) at a = 1.
//!
//! Every entry is a double sum over (alpha, beta) of chi1(b(alpha+beta))
//! times the product S_{alpha,beta} * S_{c*alpha, c^-1*beta}. Each factor
//! collapses to chi1(beta) * S(A, B) with A = alpha + beta and
//! B = beta^(2^(n-k)) + beta, so the product depends only on how the pair
//! classifies: which of A, B vanish, whether A is a (2^e+1)-th power, and
//! whether L_A(x) = B^(2^k) is solvable. The classes are labelled A..L
//! (unprimed for (alpha, beta), primed for (c*alpha, c^-1*beta)):
//!
//! - A: alpha = beta in F_{2^e}        (A = 0, B = 0)
//! - B: alpha = beta outside F_{2^e}   (A = 0, B != 0)
//! - C: alpha != beta, beta in F_{2^e} (A != 0, B = 0)
//! - D: alpha != beta, beta outside    (A != 0, B != 0)
//! - E/F: D split by Tr_e(B * gamma^-1) != 1 / = 1 (n/e odd)
//! - G/H: C split by A not a residue / a residue (n/e even)
//! - I/J/K/L: D split by residue class, solvability, and Tr_e(A) (n/e even)
//!
//! The per-class S values carry class-dependent powers of two plus a
//! character factor (cached per side as `char_factor`): the completed
//! squares give chi1(w^(2^k+1) + w) on odd-ratio F sides, and
//! chi1(A * x_A^(2^k+1)) on even-ratio I/K/L sides. Solvable residue
//! sides (K and L alike) carry the 2^(m+e) weight; only I carries 2^m.
//! Each c-regime evaluator below enumerates all q^2 pairs once per
//! multiplier (classification is b-independent and memoized in
//! [`Classification`]), accumulates its weight table in exact integers,
//! and divides by q^2, which must be exact; anything else panics, because
//! it can only mean a bug. Every weight is pinned against the brute-force
//! row sweeps in the verification suites.

use std::sync::Arc;

use crate::field::{FieldElement, FieldSpec, GoldParams, RatioParity};
use crate::linearized::{build_lu, BinaryLinearMap};
use crate::tables::{check_sweep, TableError, FULL_SWEEP_MAX_N};
use crate::weil::{
    chi1, jacobi_sign, odd_ratio_sign, power_table, s_alpha_beta, s_power_brute, SumMethod,
};

/// Coarse class of one side of a pair, by the vanishing pattern of the
/// Gold coefficient A and the linear coefficient B.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coarse {
    A,
    B,
    C,
    D,
}

/// Refinement inside C (even ratio: G/H) and D (odd ratio: E/F, even
/// ratio: I/J/K/L).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refine {
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
}

/// Classification of one side, with the derived quantities the weight
/// tables consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideClass {
    pub coarse: Coarse,
    pub refine: Option<Refine>,
    /// A = alpha + beta.
    pub gold_coeff: FieldElement,
    /// B = beta^(2^(n-k)) + beta; zero exactly when beta lies in F_{2^e}.
    pub linear_coeff: FieldElement,
    /// gamma with gamma^(2^k+1) = A (odd ratio, A != 0).
    pub root: Option<FieldElement>,
    /// Particular solution of L_A(x) = B^(2^k) (even ratio, class D, when
    /// solvable). chi1(A * x^(2^k+1)) is constant over the whole solution
    /// coset, so any particular solution serves.
    pub solution: Option<FieldElement>,
    /// The +-1 character carried by this side's closed S value:
    /// chi1(A x_A^(2^k+1)) on even I/K/L sides, the completed-square sign
    /// on odd F sides, +1 everywhere else.
    pub char_factor: i64,
}

/// Both sides of a pair: (alpha, beta) and (c*alpha, c^-1*beta).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub plain: SideClass,
    pub primed: SideClass,
}

/// Reusable per-(field, k) classifier. For even ratios it precomputes the
/// row-reduced L_A solver for every nonzero A; for odd ratios it holds
/// the L_1 solver behind the completed-square signs.
pub struct Classifier {
    field: Arc<FieldSpec>,
    params: GoldParams,
    root_exp: Option<i64>,
    unit_map: Option<BinaryLinearMap>,
    solvers: Vec<Option<BinaryLinearMap>>,
}

impl Classifier {
    pub fn new(field: &Arc<FieldSpec>, params: GoldParams) -> Classifier {
        assert_eq!(field.n(), params.n());
        let (root_exp, unit_map, solvers) = match params.ratio_parity() {
            RatioParity::Odd => (
                Some(params.root_exponent() as i64),
                Some(build_lu(field, FieldElement::ONE, params.k())),
                Vec::new(),
            ),
            RatioParity::Even => {
                let mut solvers = vec![None];
                solvers.extend(
                    field
                        .elements()
                        .skip(1)
                        .map(|a| Some(build_lu(field, a, params.k()))),
                );
                (None, None, solvers)
            }
        };
        Classifier { field: Arc::clone(field), params, root_exp, unit_map, solvers }
    }

    pub fn params(&self) -> &GoldParams {
        &self.params
    }

    /// Classifies one side (pass (alpha, beta) or (c*alpha, c^-1*beta)).
    pub fn side(&self, alpha: FieldElement, beta: FieldElement) -> SideClass {
        let field = &self.field;
        let params = &self.params;
        let a = field.add(alpha, beta);
        let b = field.add(field.frobenius(beta, params.n() - params.k()), beta);
        let coarse = match (a.is_zero(), b.is_zero()) {
            (true, true) => Coarse::A,
            (true, false) => Coarse::B,
            (false, true) => Coarse::C,
            (false, false) => Coarse::D,
        };
        let mut side = SideClass {
            coarse,
            refine: None,
            gold_coeff: a,
            linear_coeff: b,
            root: None,
            solution: None,
            char_factor: 1,
        };
        match params.ratio_parity() {
            RatioParity::Odd => {
                if !a.is_zero() {
                    let gamma = field.pow(a, self.root_exp.expect("odd ratio"));
                    side.root = Some(gamma);
                    if coarse == Coarse::D {
                        let shifted = field.mul(b, field.inv(gamma));
                        if field.rel_trace(shifted, params.e()) == FieldElement::ONE {
                            side.refine = Some(Refine::F);
                            side.char_factor = odd_ratio_sign(
                                field,
                                params,
                                self.unit_map.as_ref().expect("odd ratio"),
                                shifted,
                            );
                        } else {
                            side.refine = Some(Refine::E);
                        }
                    }
                }
            }
            RatioParity::Even => match coarse {
                Coarse::C => {
                    side.refine = Some(if field.is_gold_residue(a, params.e()) {
                        Refine::H
                    } else {
                        Refine::G
                    });
                }
                Coarse::D => {
                    let residue = field.is_gold_residue(a, params.e());
                    let map = self.solvers[a.bits() as usize].as_ref().expect("a != 0");
                    match map.solve_particular(field.frobenius(b, params.k())) {
                        None => {
                            debug_assert!(residue, "non-residue maps are bijective");
                            side.refine = Some(Refine::J);
                        }
                        Some(particular) => {
                            side.solution = Some(particular);
                            side.char_factor = chi1(
                                field,
                                field.mul(a, field.pow(particular, params.d() as i64)),
                            );
                            side.refine = Some(if !residue {
                                Refine::I
                            } else if field.rel_trace(a, params.e()) != FieldElement::ZERO {
                                Refine::K
                            } else {
                                Refine::L
                            });
                        }
                    }
                }
                Coarse::A | Coarse::B => {}
            },
        }
        side
    }

    pub fn classify(&self, c: FieldElement, alpha: FieldElement, beta: FieldElement) -> PairClass {
        let c_inv = self.field.inv(c);
        PairClass {
            plain: self.side(alpha, beta),
            primed: self.side(self.field.mul(c, alpha), self.field.mul(c_inv, beta)),
        }
    }
}

/// One-off classification of a single pair.
pub fn classify_pair(
    field: &Arc<FieldSpec>,
    params: &GoldParams,
    c: FieldElement,
    alpha: FieldElement,
    beta: FieldElement,
) -> PairClass {
    assert!(!c.is_zero(), "c must be nonzero");
    Classifier::new(field, *params).classify(c, alpha, beta)
}

/// One classified pair with its coordinates.
#[derive(Debug, Clone, Copy)]
pub struct PairRecord {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub class: PairClass,
}

/// All q^2 pairs classified for a fixed multiplier c. The classes do not
/// depend on b, so one pass serves every entry of the row.
pub struct Classification {
    field: Arc<FieldSpec>,
    params: GoldParams,
    c: FieldElement,
    /// 1 + c^-1, the shift that turns chi1(b(alpha+beta)) * chi1((1+c^-1)beta)
    /// into chi1(b*alpha + (1+c^-1+b)*beta).
    chi_shift: FieldElement,
    pairs: Vec<PairRecord>,
}

impl Classification {
    pub fn new(
        field: &Arc<FieldSpec>,
        params: GoldParams,
        c: FieldElement,
    ) -> Result<Classification, TableError> {
        Self::new_guarded(field, params, c, false)
    }

    pub fn new_guarded(
        field: &Arc<FieldSpec>,
        params: GoldParams,
        c: FieldElement,
        force: bool,
    ) -> Result<Classification, TableError> {
        if c.is_zero() {
            return Err(TableError::ZeroMultiplier);
        }
        check_sweep(field.n(), FULL_SWEEP_MAX_N, 2, force)?;
        let classifier = Classifier::new(field, params);
        let c_inv = field.inv(c);
        let mut pairs = Vec::with_capacity((field.q() as usize) * (field.q() as usize));
        for alpha in field.elements() {
            let ca = field.mul(c, alpha);
            for beta in field.elements() {
                let class = PairClass {
                    plain: classifier.side(alpha, beta),
                    primed: classifier.side(ca, field.mul(c_inv, beta)),
                };
                pairs.push(PairRecord { alpha, beta, class });
            }
        }
        Ok(Classification {
            field: Arc::clone(field),
            params,
            c,
            chi_shift: field.add(FieldElement::ONE, c_inv),
            pairs,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn params(&self) -> &GoldParams {
        &self.params
    }

    pub fn c(&self) -> FieldElement {
        self.c
    }

    pub fn pairs(&self) -> &[PairRecord] {
        &self.pairs
    }

    /// chi1((1 + c^-1) * beta) for a record.
    #[inline]
    fn chi_c(&self, rec: &PairRecord) -> i64 {
        chi1(&self.field, self.field.mul(self.chi_shift, rec.beta))
    }

    /// chi1(b * (alpha + beta)) for a record.
    #[inline]
    fn chi_b(&self, rec: &PairRecord, b: FieldElement) -> i64 {
        chi1(&self.field, self.field.mul(b, self.field.add(rec.alpha, rec.beta)))
    }
}

fn exact_div(total: i128, denom: i128, what: &str) -> u64 {
    assert!(
        total % denom == 0 && total >= 0,
        "{what}: accumulator {total} is not a non-negative multiple of {denom}"
    );
    u64::try_from(total / denom).expect("entry fits u64")
}

/// c = 1, n/e odd: the entry at (1, b) is 0 when Tr_e(sqrt(b)) = 0 and
/// 2^e otherwise.
pub fn closed_c1_odd(field: &FieldSpec, params: &GoldParams, b: FieldElement) -> u64 {
    assert!(params.ratio_is_odd(), "odd-ratio evaluator");
    assert!(!b.is_zero(), "entries are defined for b != 0");
    if field.rel_trace(field.sqrt(b), params.e()) == FieldElement::ZERO {
        0
    } else {
        1 << params.e()
    }
}

/// c = 1, n/e even: 2^e plus two character sums over the class unions,
/// divided by 2^n. The square of each side's S value puts G and I at
/// weight 2^n and H, K, L at 2^(n+2e) (solvable residue sides all carry
/// the large weight).
pub fn closed_c1_even(cls: &Classification, b: FieldElement) -> u64 {
    let params = cls.params();
    assert_eq!(cls.c(), FieldElement::ONE, "c = 1 evaluator");
    assert!(!params.ratio_is_odd(), "even-ratio evaluator");
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let mut sum_small = 0i128;
    let mut sum_large = 0i128;
    for rec in cls.pairs() {
        match rec.class.plain.refine {
            Some(Refine::G) | Some(Refine::I) => sum_small += i128::from(cls.chi_b(rec, b)),
            Some(Refine::H) | Some(Refine::K) | Some(Refine::L) => {
                sum_large += i128::from(cls.chi_b(rec, b));
            }
            _ => {}
        }
    }
    let (n, e) = (params.n(), params.e());
    let total = (1i128 << (n + e)) + sum_small + (sum_large << (2 * e));
    exact_div(total, 1i128 << n, "c=1 even-ratio closed form")
}

/// c in F_{2^e} \ {0,1}, n/e odd: 1 + 2^(e-n) * sum over F n F' of
/// chi1(b*alpha + (1 + c^-1 + b)*beta) weighted by both completed-square
/// signs.
pub fn closed_subfield_odd(cls: &Classification, b: FieldElement) -> u64 {
    let params = cls.params();
    let field = cls.field();
    assert!(params.ratio_is_odd(), "odd-ratio evaluator");
    assert_subfield_multiplier(field, params, cls.c());
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let mut sum_ff = 0i128;
    for rec in cls.pairs() {
        if rec.class.plain.refine == Some(Refine::F) && rec.class.primed.refine == Some(Refine::F)
        {
            let signs = rec.class.plain.char_factor * rec.class.primed.char_factor;
            sum_ff += i128::from(cls.chi_b(rec, b) * cls.chi_c(rec) * signs);
        }
    }
    let (n, e) = (params.n(), params.e());
    let total = (1i128 << n) + (sum_ff << e);
    exact_div(total, 1i128 << n, "subfield odd-ratio closed form")
}

/// c in F_{2^e} \ {0,1}, n/e even: the full weight table over the class
/// intersections, divided by q^2. In this regime B and B' vanish
/// together, so the plain class pins the primed side to {A', C'} or
/// {B', D'}; impossible intersections are hard errors.
pub fn closed_subfield_even(cls: &Classification, b: FieldElement) -> u64 {
    let params = cls.params();
    let field = cls.field();
    assert!(!params.ratio_is_odd(), "even-ratio evaluator");
    assert_subfield_multiplier(field, params, cls.c());
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let (n, e) = (params.n(), params.e());
    let m = params.m().expect("n even");
    let s = params.half_sign() as i128;
    let mut total = 0i128;
    for rec in cls.pairs() {
        let plain = &rec.class.plain;
        let primed = &rec.class.primed;
        use Coarse as C;
        use Refine::*;
        let chi_c = i128::from(cls.chi_c(rec));
        let pair_sign = i128::from(plain.char_factor * primed.char_factor);
        let weight: i128 = match (plain.coarse, plain.refine, primed.coarse, primed.refine) {
            (C::B, ..) | (_, _, C::B, _) => 0,
            (C::A, _, C::A, _) => chi_c << (2 * n),
            (C::A, _, C::C, Some(G)) => (s * chi_c) << (m + n),
            (C::A, _, C::C, Some(H)) => (-s * chi_c) << (m + n + e),
            (C::C, Some(G), C::A, _) => (s * chi_c) << (m + n),
            (C::C, Some(H), C::A, _) => (-s * chi_c) << (m + n + e),
            (C::C, Some(G), C::C, Some(G)) => chi_c << n,
            (C::C, Some(G), C::C, Some(H)) | (C::C, Some(H), C::C, Some(G)) => {
                -chi_c << (n + e)
            }
            (C::C, Some(H), C::C, Some(H)) => chi_c << (n + 2 * e),
            (C::D, Some(J), ..) | (C::D, _, C::D, Some(J)) => 0,
            (C::D, Some(I), C::D, Some(I)) => (chi_c * pair_sign) << n,
            (C::D, Some(I), C::D, Some(K | L)) | (C::D, Some(K | L), C::D, Some(I)) => {
                (-chi_c * pair_sign) << (n + e)
            }
            (C::D, Some(K | L), C::D, Some(K | L)) => (chi_c * pair_sign) << (n + 2 * e),
            other => unreachable!(
                "impossible class intersection {:?} for a subfield multiplier",
                other
            ),
        };
        total += i128::from(cls.chi_b(rec, b)) * weight;
    }
    exact_div(total, 1i128 << (2 * n), "subfield even-ratio closed form")
}

/// c outside F_{2^e}, n/e odd: 1 plus a Jacobi-signed 2^((e-n)/2) sum over
/// (A n F') u (A' n F) and a 2^(e-n) sum over F n F', each term weighted
/// by the completed-square signs of its F sides.
///
/// The mixed-set coefficient is the one the derivation produces,
/// (2/(n/e))^e * 2^((e-n)/2); the raw weights 2^((3n+e)/2) are integers
/// because n/e odd forces n = e (mod 2).
pub fn closed_general_odd(cls: &Classification, b: FieldElement) -> u64 {
    let params = cls.params();
    let field = cls.field();
    assert!(params.ratio_is_odd(), "odd-ratio evaluator");
    assert_general_multiplier(field, params, cls.c());
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let (n, e) = (params.n(), params.e());
    assert!((3 * n + e) % 2 == 0, "n/e odd forces n = e mod 2");
    let mut sum_mixed = 0i128;
    let mut sum_ff = 0i128;
    for rec in cls.pairs() {
        let plain = &rec.class.plain;
        let primed = &rec.class.primed;
        let plain_f = plain.refine == Some(Refine::F);
        let primed_f = primed.refine == Some(Refine::F);
        if (plain.coarse == Coarse::A && primed_f) || (plain_f && primed.coarse == Coarse::A) {
            let sign = plain.char_factor * primed.char_factor;
            sum_mixed += i128::from(cls.chi_b(rec, b) * cls.chi_c(rec) * sign);
        } else if plain_f && primed_f {
            let sign = plain.char_factor * primed.char_factor;
            sum_ff += i128::from(cls.chi_b(rec, b) * cls.chi_c(rec) * sign);
        }
    }
    let j = i128::from(jacobi_sign(params));
    let total = (1i128 << (2 * n)) + j * (sum_mixed << ((3 * n + e) / 2)) + (sum_ff << (n + e));
    exact_div(total, 1i128 << (2 * n), "general odd-ratio closed form")
}

/// c outside F_{2^e}, n/e even: the full weight table, with single-sided
/// character factors where one side is degenerate and the two-sided
/// product on D x D', divided by q^2. Here B = 0 = B' only at beta = 0,
/// which reshuffles the reachable intersections relative to the subfield
/// regime.
pub fn closed_general_even(cls: &Classification, b: FieldElement) -> u64 {
    let params = cls.params();
    let field = cls.field();
    assert!(!params.ratio_is_odd(), "even-ratio evaluator");
    assert_general_multiplier(field, params, cls.c());
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let (n, e) = (params.n(), params.e());
    let m = params.m().expect("n even");
    let s = params.half_sign() as i128;
    let mut total = 0i128;
    for rec in cls.pairs() {
        let plain = &rec.class.plain;
        let primed = &rec.class.primed;
        use Coarse as C;
        use Refine::*;
        let chi_c = i128::from(cls.chi_c(rec));
        let m_primed = chi_c * i128::from(primed.char_factor);
        let m_plain = chi_c * i128::from(plain.char_factor);
        let m_both = chi_c * i128::from(plain.char_factor * primed.char_factor);
        let weight: i128 = match (plain.coarse, plain.refine, primed.coarse, primed.refine) {
            (C::B, ..) | (_, _, C::B, _) => 0,
            (C::A, _, C::A, _) => chi_c << (2 * n),
            (C::A, _, C::D, Some(J)) => 0,
            (C::A, _, C::D, Some(I)) => (s * m_primed) << (m + n),
            (C::A, _, C::D, Some(K | L)) => (-s * m_primed) << (m + n + e),
            (C::C, Some(G), C::C, Some(G)) => chi_c << n,
            (C::C, Some(G), C::C, Some(H)) | (C::C, Some(H), C::C, Some(G)) => {
                -chi_c << (n + e)
            }
            (C::C, Some(H), C::C, Some(H)) => chi_c << (n + 2 * e),
            (C::C, _, C::D, Some(J)) => 0,
            (C::C, Some(G), C::D, Some(I)) => m_primed << n,
            (C::C, Some(G), C::D, Some(K | L)) => -m_primed << (n + e),
            (C::C, Some(H), C::D, Some(I)) => -m_primed << (n + e),
            (C::C, Some(H), C::D, Some(K | L)) => m_primed << (n + 2 * e),
            (C::D, Some(J), C::A, _) => 0,
            (C::D, Some(I), C::A, _) => (s * m_plain) << (m + n),
            (C::D, Some(K | L), C::A, _) => (-s * m_plain) << (m + n + e),
            (C::D, Some(J), C::C, _) => 0,
            (C::D, Some(I), C::C, Some(G)) => m_plain << n,
            (C::D, Some(K | L), C::C, Some(G)) => -m_plain << (n + e),
            (C::D, Some(I), C::C, Some(H)) => -m_plain << (n + e),
            (C::D, Some(K | L), C::C, Some(H)) => m_plain << (n + 2 * e),
            (C::D, Some(J), C::D, _) | (C::D, _, C::D, Some(J)) => 0,
            (C::D, Some(I), C::D, Some(I)) => m_both << n,
            (C::D, Some(I), C::D, Some(K | L)) | (C::D, Some(K | L), C::D, Some(I)) => {
                -m_both << (n + e)
            }
            (C::D, Some(K | L), C::D, Some(K | L)) => m_both << (n + 2 * e),
            other => unreachable!(
                "impossible class intersection {:?} for a general multiplier",
                other
            ),
        };
        total += i128::from(cls.chi_b(rec, b)) * weight;
    }
    exact_div(total, 1i128 << (2 * n), "general even-ratio closed form")
}

/// Which of the three closed-form regimes a multiplier falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplierRegime {
    /// c = 1.
    One,
    /// c in F_{2^e} \ {0, 1}.
    Subfield,
    /// c outside F_{2^e}.
    General,
}

pub fn multiplier_regime(
    field: &FieldSpec,
    params: &GoldParams,
    c: FieldElement,
) -> MultiplierRegime {
    assert!(!c.is_zero(), "c must be nonzero");
    if c == FieldElement::ONE {
        MultiplierRegime::One
    } else if field.in_subfield(c, params.e()) {
        MultiplierRegime::Subfield
    } else {
        MultiplierRegime::General
    }
}

fn assert_subfield_multiplier(field: &FieldSpec, params: &GoldParams, c: FieldElement) {
    assert_eq!(
        multiplier_regime(field, params, c),
        MultiplierRegime::Subfield,
        "evaluator needs c in F_{{2^e}} \\ {{0, 1}}"
    );
}

fn assert_general_multiplier(field: &FieldSpec, params: &GoldParams, c: FieldElement) {
    assert_eq!(
        multiplier_regime(field, params, c),
        MultiplierRegime::General,
        "evaluator needs c outside F_{{2^e}}"
    );
}

/// The closed-form entry at (1, b) for any nonzero c, dispatched by
/// regime and ratio parity.
pub fn closed_entry(cls: &Classification, b: FieldElement) -> u64 {
    let field = cls.field();
    let params = cls.params();
    match (multiplier_regime(field, params, cls.c()), params.ratio_parity()) {
        (MultiplierRegime::One, RatioParity::Odd) => closed_c1_odd(field, params, b),
        (MultiplierRegime::One, RatioParity::Even) => closed_c1_even(cls, b),
        (MultiplierRegime::Subfield, RatioParity::Odd) => closed_subfield_odd(cls, b),
        (MultiplierRegime::Subfield, RatioParity::Even) => closed_subfield_even(cls, b),
        (MultiplierRegime::General, RatioParity::Odd) => closed_general_odd(cls, b),
        (MultiplierRegime::General, RatioParity::Even) => closed_general_even(cls, b),
    }
}

/// All q^2 values of S_{alpha,beta} for one (field, k), by either method.
pub struct SAlphaBetaTable {
    field: Arc<FieldSpec>,
    params: GoldParams,
    method: SumMethod,
    values: Vec<i64>,
}

impl SAlphaBetaTable {
    pub fn new(
        field: &Arc<FieldSpec>,
        params: GoldParams,
        method: SumMethod,
    ) -> Result<SAlphaBetaTable, TableError> {
        check_sweep(field.n(), FULL_SWEEP_MAX_N, 3, false)?;
        let q = field.q() as usize;
        let mut values = vec![0i64; q * q];
        match method {
            SumMethod::Brute => {
                let pd = power_table(field, params.d());
                for alpha in field.elements() {
                    for beta in field.elements() {
                        values[(alpha.bits() as usize) * q + beta.bits() as usize] =
                            s_power_brute(field, &pd, alpha, beta);
                    }
                }
            }
            SumMethod::Closed => {
                for alpha in field.elements() {
                    for beta in field.elements() {
                        values[(alpha.bits() as usize) * q + beta.bits() as usize] =
                            s_alpha_beta(field, &params, alpha, beta, SumMethod::Closed).value;
                    }
                }
            }
        }
        Ok(SAlphaBetaTable { field: Arc::clone(field), params, method, values })
    }

    pub fn method(&self) -> SumMethod {
        self.method
    }

    pub fn params(&self) -> &GoldParams {
        &self.params
    }

    #[inline]
    pub fn value(&self, alpha: FieldElement, beta: FieldElement) -> i64 {
        self.values[(alpha.bits() as usize) * self.field.q() as usize + beta.bits() as usize]
    }
}

/// The entry at (1, b) straight from the double character sum
/// (1/q^2) sum over all (alpha, beta) of chi1(b(alpha+beta)) *
/// S_{alpha,beta} * S_{c alpha, c^-1 beta}. Independent of the classified
/// evaluators; the division must be exact.
pub fn decomposition_entry(table: &SAlphaBetaTable, c: FieldElement, b: FieldElement) -> u64 {
    assert!(!c.is_zero(), "c must be nonzero");
    assert!(!b.is_zero(), "entries are defined for b != 0");
    let field = &table.field;
    let c_inv = field.inv(c);
    let mut total = 0i128;
    for alpha in field.elements() {
        let ca = field.mul(c, alpha);
        for beta in field.elements() {
            let cb = field.mul(c_inv, beta);
            let sign = chi1(field, field.mul(b, field.add(alpha, beta)));
            total += i128::from(sign)
                * i128::from(table.value(alpha, beta))
                * i128::from(table.value(ca, cb));
        }
    }
    let n = field.n();
    exact_div(total, 1i128 << (2 * n), "double-sum decomposition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::{cbct_brute, SBox};

    fn f(n: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(n).unwrap())
    }

    fn brute_row(field: &Arc<FieldSpec>, k: u32, c: FieldElement) -> Vec<u64> {
        let sbox = SBox::power(field, (1 << k) + 1);
        cbct_brute(&sbox, c, FieldElement::ONE)
            .unwrap()
            .counts()
            .to_vec()
    }

    #[test]
    fn zero_pair_is_class_a_on_both_sides() {
        let field = f(6);
        let params = GoldParams::new(6, 2);
        let class = classify_pair(
            &field,
            &params,
            field.generator(),
            FieldElement::ZERO,
            FieldElement::ZERO,
        );
        assert_eq!(class.plain.coarse, Coarse::A);
        assert_eq!(class.primed.coarse, Coarse::A);
        assert_eq!(class.plain.refine, None);
        assert_eq!(class.plain.char_factor, 1);
    }

    #[test]
    fn partition_is_exclusive_and_exhaustive_f64() {
        let field = f(6);
        for k in [1u32, 2, 3] {
            let params = GoldParams::new(6, k);
            let c = field.generator();
            let cls = Classification::new(&field, params, c).unwrap();
            assert_eq!(cls.pairs().len(), 4096);
            for rec in cls.pairs() {
                for side in [&rec.class.plain, &rec.class.primed] {
                    // A = 0 exactly on classes A and B; B = 0 exactly on A and C.
                    let a_zero = side.gold_coeff.is_zero();
                    assert_eq!(a_zero, matches!(side.coarse, Coarse::A | Coarse::B));
                    let b_zero = side.linear_coeff.is_zero();
                    assert_eq!(b_zero, matches!(side.coarse, Coarse::A | Coarse::C));
                    // Refinements appear exactly where the parity demands.
                    let expect_refine = match params.ratio_parity() {
                        RatioParity::Odd => side.coarse == Coarse::D,
                        RatioParity::Even => matches!(side.coarse, Coarse::C | Coarse::D),
                    };
                    assert_eq!(side.refine.is_some(), expect_refine);
                    if let Some(r) = side.refine {
                        let legal: &[Refine] = match (params.ratio_parity(), side.coarse) {
                            (RatioParity::Odd, Coarse::D) => &[Refine::E, Refine::F],
                            (RatioParity::Even, Coarse::C) => &[Refine::G, Refine::H],
                            (RatioParity::Even, Coarse::D) => {
                                &[Refine::I, Refine::J, Refine::K, Refine::L]
                            }
                            _ => &[],
                        };
                        assert!(legal.contains(&r));
                    }
                }
            }
        }
    }

    #[test]
    fn c1_odd_value_distribution_f64() {
        // n=6, k=2: 15 nonzero b give 0 and 48 give 4.
        let field = f(6);
        let params = GoldParams::new(6, 2);
        let mut zeros = 0;
        let mut fours = 0;
        for b in field.elements().skip(1) {
            match closed_c1_odd(&field, &params, b) {
                0 => zeros += 1,
                4 => fours += 1,
                other => panic!("unexpected entry {other}"),
            }
        }
        assert_eq!((zeros, fours), (15, 48));
    }

    #[test]
    fn c1_odd_matches_brute_n6() {
        let field = f(6);
        for k in [2u32, 4] {
            let params = GoldParams::new(6, k);
            let row = brute_row(&field, k, FieldElement::ONE);
            for b in field.elements().skip(1) {
                assert_eq!(
                    row[b.bits() as usize],
                    closed_c1_odd(&field, &params, b),
                    "k={k} b={b}"
                );
            }
        }
    }

    #[test]
    fn c1_even_matches_brute_n4() {
        let field = f(4);
        for k in [1u32, 2, 3] {
            let params = GoldParams::new(4, k);
            let cls = Classification::new(&field, params, FieldElement::ONE).unwrap();
            let row = brute_row(&field, k, FieldElement::ONE);
            for b in field.elements().skip(1) {
                assert_eq!(
                    row[b.bits() as usize],
                    closed_c1_even(&cls, b),
                    "k={k} b={b}"
                );
            }
        }
    }

    #[test]
    fn subfield_odd_matches_brute_and_known_row() {
        // n=6, k=4 (e=2): c = g^21 lies in F_4 \ {0,1}.
        let field = f(6);
        let params = GoldParams::new(6, 4);
        let c = field.pow(field.generator(), 21);
        assert_eq!(multiplier_regime(&field, &params, c), MultiplierRegime::Subfield);
        let cls = Classification::new(&field, params, c).unwrap();
        let row = brute_row(&field, 4, c);
        let mut closed: Vec<u64> = vec![row[0]];
        for b in field.elements().skip(1) {
            let v = closed_subfield_odd(&cls, b);
            assert_eq!(row[b.bits() as usize], v, "b={b}");
            closed.push(v);
        }
        closed.sort_unstable();
        closed.dedup();
        assert_eq!(closed, vec![0, 1, 4]);
    }

    #[test]
    fn subfield_even_matches_brute_n4() {
        // n=4, k=2 (e=2): g^5 and g^10 are the subfield multipliers.
        let field = f(4);
        let params = GoldParams::new(4, 2);
        let g = field.generator();
        for t in [5i64, 10] {
            let c = field.pow(g, t);
            let cls = Classification::new(&field, params, c).unwrap();
            let row = brute_row(&field, 2, c);
            for b in field.elements().skip(1) {
                assert_eq!(
                    row[b.bits() as usize],
                    closed_subfield_even(&cls, b),
                    "c=g^{t} b={b}"
                );
            }
        }
    }

    #[test]
    fn general_odd_matches_brute_n6() {
        let field = f(6);
        let params = GoldParams::new(6, 2);
        let g = field.generator();
        for t in [1i64, 3, 11] {
            let c = field.pow(g, t);
            assert_eq!(multiplier_regime(&field, &params, c), MultiplierRegime::General);
            let cls = Classification::new(&field, params, c).unwrap();
            let row = brute_row(&field, 2, c);
            for b in field.elements().skip(1) {
                assert_eq!(
                    row[b.bits() as usize],
                    closed_general_odd(&cls, b),
                    "c=g^{t} b={b}"
                );
            }
        }
    }

    #[test]
    fn general_even_matches_brute_n4() {
        let field = f(4);
        for k in [1u32, 2] {
            let params = GoldParams::new(4, k);
            let g = field.generator();
            for t in [1i64, 2, 7] {
                let c = field.pow(g, t);
                if multiplier_regime(&field, &params, c) != MultiplierRegime::General {
                    continue;
                }
                let cls = Classification::new(&field, params, c).unwrap();
                let row = brute_row(&field, k, c);
                for b in field.elements().skip(1) {
                    assert_eq!(
                        row[b.bits() as usize],
                        closed_general_even(&cls, b),
                        "k={k} c=g^{t} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn decomposition_matches_brute_and_both_methods_agree() {
        let field = f(4);
        let params = GoldParams::new(4, 2);
        let brute = SAlphaBetaTable::new(&field, params, SumMethod::Brute).unwrap();
        let closed = SAlphaBetaTable::new(&field, params, SumMethod::Closed).unwrap();
        let g = field.generator();
        for t in [0i64, 1, 5] {
            let c = field.pow(g, t);
            let row = brute_row(&field, 2, c);
            for b in field.elements().skip(1) {
                let vb = decomposition_entry(&brute, c, b);
                let vc = decomposition_entry(&closed, c, b);
                assert_eq!(vb, vc, "c=g^{t} b={b}");
                assert_eq!(vb, row[b.bits() as usize], "c=g^{t} b={b}");
            }
        }
    }

    #[test]
    fn closed_entry_dispatches_every_regime() {
        let field = f(6);
        let params = GoldParams::new(6, 4);
        let g = field.generator();
        for c in [FieldElement::ONE, field.pow(g, 21), g] {
            let cls = Classification::new(&field, params, c).unwrap();
            let row = brute_row(&field, 4, c);
            for b in [FieldElement::ONE, g, field.pow(g, 33)] {
                assert_eq!(closed_entry(&cls, b), row[b.bits() as usize], "c={c} b={b}");
            }
        }
    }

    #[test]
    fn c1_even_bound_from_class_cardinalities() {
        // max entry <= 2^e + 2^-n |G u I| + 2^(2e-n) |H u K u L|, with the
        // large weight on every solvable residue class.
        let field = f(4);
        for k in [1u32, 2, 3] {
            let params = GoldParams::new(4, k);
            let cls = Classification::new(&field, params, FieldElement::ONE).unwrap();
            let mut small = 0u64;
            let mut large = 0u64;
            for rec in cls.pairs() {
                match rec.class.plain.refine {
                    Some(Refine::G) | Some(Refine::I) => small += 1,
                    Some(Refine::H) | Some(Refine::K) | Some(Refine::L) => large += 1,
                    _ => {}
                }
            }
            let (n, e) = (params.n(), params.e());
            let max = field
                .elements()
                .skip(1)
                .map(|b| closed_c1_even(&cls, b))
                .max()
                .unwrap();
            // Exact rational comparison: max <= 2^e + (small + 2^2e * large) / 2^n.
            assert!(
                (max << n) <= (1 << (n + e)) + small + (large << (2 * e)),
                "k={k}: max {max} exceeds the counting bound"
            );
        }
    }

    #[test]
    fn uniformity_bounds_from_class_cardinalities() {
        // max entry <= 1 + 2^(e-n) |F n F'| for a subfield multiplier with
        // odd ratio; the analogous counting bounds hold in the other
        // regimes with the weights used by the evaluators.
        let field = f(6);
        let params = GoldParams::new(6, 4);
        let c = field.pow(field.generator(), 21);
        let cls = Classification::new(&field, params, c).unwrap();
        let ff = cls
            .pairs()
            .iter()
            .filter(|r| {
                r.class.plain.refine == Some(Refine::F)
                    && r.class.primed.refine == Some(Refine::F)
            })
            .count() as u64;
        let max = field
            .elements()
            .skip(1)
            .map(|b| closed_subfield_odd(&cls, b))
            .max()
            .unwrap();
        // Exact rational comparison: max <= 1 + |F n F'| / 2^(n-e).
        assert!(
            (max - 1) << (params.n() - params.e()) <= ff,
            "max {max} exceeds the counting bound (|FnF'| = {ff})"
        );
    }
}
