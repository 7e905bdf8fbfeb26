//! The claim registry: machine-readable statements about tree indices,
//! with scope predicates and per-tree evaluation in exact arithmetic.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::canon::{canonical_key, CanonicalKey};
use crate::enumerate::{self, HARD_MAX_N};
use crate::expr::{self, eval, EvalError, Expr, Reading, Rel};
use crate::indices::TreeStats;
use crate::prufer::PruferCode;
use crate::shape::{caterpillar_spine, support_vertices};
use crate::tree::Tree;

/// Which trees a claim speaks about; decidable from the tree alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scope {
    All,
    /// `n >= n0`
    MinOrder(usize),
    /// `n = n0`
    ExactOrder(usize),
    Stars,
    Caterpillars,
    /// Maximum degree at least this.
    MinMaxDegree(u32),
    /// `irr > 0`
    PositiveIrr,
    /// All interior sorted degrees equal `(Delta + delta) / 2` exactly.
    LambdaInterior,
    /// Has a support vertex `u` with `low < deg(u) < high`, distinct from
    /// some maximum-degree vertex.
    SupportDegreeWindow {
        low: u32,
        high: u32,
    },
    /// Has a strong support vertex of degree at least this, distinct from
    /// some maximum-degree vertex.
    StrongSupportMinDegree(u32),
}

impl Scope {
    pub fn contains(&self, t: &Tree, stats: &TreeStats) -> bool {
        match self {
            Scope::All => true,
            Scope::MinOrder(n0) => stats.n >= *n0,
            Scope::ExactOrder(n0) => stats.n == *n0,
            Scope::Stars => is_star(stats),
            Scope::Caterpillars => caterpillar_spine(t).is_some(),
            Scope::MinMaxDegree(d) => stats.max_degree >= *d,
            Scope::PositiveIrr => !stats.irr.is_zero(),
            Scope::LambdaInterior => {
                let n = stats.n;
                let sum = stats.max_degree as u64 + stats.min_degree as u64;
                // interior positions 2..=n-1 of the sorted sequence
                (2..n).all(|i| 2 * stats.degrees[i - 1] as u64 == sum)
            }
            Scope::SupportDegreeWindow { low, high } => {
                has_qualifying_support(t, stats, |d, _strong| d > *low && d < *high)
            }
            Scope::StrongSupportMinDegree(min) => {
                has_qualifying_support(t, stats, |d, strong| strong && d >= *min)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Scope::All => "all trees".into(),
            Scope::MinOrder(n0) => format!("trees with n >= {n0}"),
            Scope::ExactOrder(n0) => format!("trees with n = {n0}"),
            Scope::Stars => "stars".into(),
            Scope::Caterpillars => "caterpillars".into(),
            Scope::MinMaxDegree(d) => format!("trees with maximum degree >= {d}"),
            Scope::PositiveIrr => "trees with irr > 0".into(),
            Scope::LambdaInterior => {
                "trees whose interior sorted degrees all equal (Delta+delta)/2".into()
            }
            Scope::SupportDegreeWindow { low, high } => format!(
                "trees with a support vertex of degree in ({low}, {high}) \
                 distinct from a maximum-degree vertex"
            ),
            Scope::StrongSupportMinDegree(min) => format!(
                "trees with a strong support vertex of degree >= {min} \
                 distinct from a maximum-degree vertex"
            ),
        }
    }
}

fn is_star(stats: &TreeStats) -> bool {
    stats.n <= 2 || stats.max_degree as usize == stats.n - 1
}

/// True iff some support vertex satisfies `pred(degree, is_strong)` and a
/// maximum-degree vertex other than it exists.
fn has_qualifying_support(t: &Tree, stats: &TreeStats, pred: impl Fn(u32, bool) -> bool) -> bool {
    let max_count = stats
        .degrees
        .iter()
        .rev()
        .take_while(|&&d| d == stats.max_degree)
        .count();
    support_vertices(t).iter().any(|s| {
        let d = t.degree(s.vertex) as u32;
        pred(d, s.is_strong()) && (d < stats.max_degree || max_count >= 2)
    })
}

/// Aggregate used when a statement applies an index to a whole class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    Max,
    Min,
}

/// How a claim is checked.
#[derive(Debug, Clone)]
pub enum ClaimKind {
    /// `lhs rel rhs` per tree; optionally also require the left side to be
    /// an even integer.
    Relation {
        rel: Rel,
        lhs: Expr,
        rhs: Expr,
        lhs_src: String,
        rhs_src: String,
        require_even_lhs: bool,
    },
    /// Some tree in the same order/max-degree class has strictly smaller
    /// sigma; fails exactly on the sigma-minimizers of the class.
    ExistsSigmaReducer,
    /// The star is the unique irr-maximizer of its order.
    StarUniqueIrrMax,
    /// Extremal spine arrangement over caterpillars with a fixed spine
    /// degree multiset; verified by exhaustive arrangement enumeration.
    CaterpillarExtremal(Objective),
    /// Classwise irr monotonicity across degree-sequence classes of equal
    /// order, evaluated under both min- and max-over-class readings.
    DegreeClassMonotone,
    /// The degree sequence passes the Erdős–Gallai realizability test.
    DegreeSequenceGraphic,
}

/// One verifiable statement.
#[derive(Debug, Clone)]
pub struct Claim {
    pub id: String,
    /// Human-readable form of the statement.
    pub statement: String,
    pub scope: Scope,
    pub kind: ClaimKind,
    /// Extra context shown in report headers.
    pub note: Option<String>,
}

impl Claim {
    fn relation(id: &str, statement: &str, scope: Scope, rel: Rel, lhs: &str, rhs: &str) -> Claim {
        Claim {
            id: id.into(),
            statement: statement.into(),
            scope,
            kind: ClaimKind::Relation {
                rel,
                lhs: expr::parse(lhs).unwrap_or_else(|e| panic!("registry lhs of {id}: {e}")),
                rhs: expr::parse(rhs).unwrap_or_else(|e| panic!("registry rhs of {id}: {e}")),
                lhs_src: lhs.into(),
                rhs_src: rhs.into(),
                require_even_lhs: false,
            },
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Claim {
        self.note = Some(note.into());
        self
    }

    fn with_even_lhs(mut self) -> Claim {
        if let ClaimKind::Relation {
            require_even_lhs, ..
        } = &mut self.kind
        {
            *require_even_lhs = true;
        }
        self
    }

    pub fn kind_label(&self) -> &'static str {
        match &self.kind {
            ClaimKind::Relation { rel: Rel::Eq, .. } => "equality",
            ClaimKind::Relation { .. } => "inequality",
            ClaimKind::ExistsSigmaReducer => "existence",
            ClaimKind::StarUniqueIrrMax => "domain-extremal",
            ClaimKind::CaterpillarExtremal(Objective::Max) => "arrangement-extremal-max",
            ClaimKind::CaterpillarExtremal(Objective::Min) => "arrangement-extremal-min",
            ClaimKind::DegreeClassMonotone => "classwise-monotone",
            ClaimKind::DegreeSequenceGraphic => "degree-sequence-test",
        }
    }
}

/// The built-in claims, in stable order.
pub fn registry() -> Vec<Claim> {
    const FRACTION: &str = "(/ (+ (* 2 m n n (- Delta 1)) (- delta 1)) (+ n Delta))";
    vec![
        Claim::relation(
            "eq2_m1_upper",
            "M1 <= max((n-1)(Delta + (n-1)/Delta), (n-1)(n+3)/2)",
            Scope::MinOrder(2),
            Rel::Le,
            "M1",
            "(max (* (- n 1) (+ Delta (/ (- n 1) Delta))) (/ (* (- n 1) (+ n 3)) 2))",
        )
        .with_note("scope starts at n = 2 so the division by Delta is defined"),
        Claim::relation(
            "lemma1_star_irr",
            "irr(S_n) = (n-1)(n-2)",
            Scope::Stars,
            Rel::Eq,
            "irr",
            "(* (- n 1) (- n 2))",
        ),
        Claim {
            id: "star_max_irr".into(),
            statement: "among trees of one order, the star is the unique irr-maximizer".into(),
            scope: Scope::All,
            kind: ClaimKind::StarUniqueIrrMax,
            note: None,
        },
        Claim::relation(
            "ghalavand_total",
            "irr_T <= (n^2/4) irr",
            Scope::PositiveIrr,
            Rel::Le,
            "irrT",
            "(* (/ (* n n) 4) irr)",
        )
        .with_note("trees with irr = 0 are out of scope and only counted"),
        Claim {
            id: "hy1_caterpillar_max".into(),
            statement: "a prescribed spine ordering maximizes irr among caterpillars \
                        with a fixed spine degree multiset"
                .into(),
            scope: Scope::Caterpillars,
            kind: ClaimKind::CaterpillarExtremal(Objective::Max),
            note: Some(
                "the prescribed ordering does not pin down a unique permutation; \
                 the true argmax set is reported instead"
                    .into(),
            ),
        },
        Claim {
            id: "hy2_caterpillar_min".into(),
            statement: "the descending spine ordering minimizes irr among caterpillars \
                        with a fixed spine degree multiset of distinct degrees"
                .into(),
            scope: Scope::Caterpillars,
            kind: ClaimKind::CaterpillarExtremal(Objective::Min),
            note: Some("multisets with repeated degrees are out of scope".into()),
        },
        Claim::relation(
            "sigma_identity",
            "sigma = F - 2 M2, and sigma is an even integer",
            Scope::All,
            Rel::Eq,
            "sigma",
            "(- F (* 2 M2))",
        )
        .with_even_lhs(),
        Claim {
            id: "pro_se1_monotone".into(),
            statement: "for equal-order degree-sequence classes, sum(D_i) <= sum(D_j) \
                        implies irr(T_{D_i}) <= irr(T_{D_j})"
                .into(),
            scope: Scope::All,
            kind: ClaimKind::DegreeClassMonotone,
            note: Some(
                "irr of a multi-member class is read as min-over-class and \
                 max-over-class; both readings are reported"
                    .into(),
            ),
        },
        Claim::relation(
            "le_sigma2_n4",
            "sigma = sum_{i=1..2}(d_i+1)(d_i-1)^2 + sum_{i=1..3}(d_i-d_{i+1})^2 \
             + sum_{i=2..3}(d_i+2)(d_i-1)^2 - 2 on order-4 trees",
            Scope::ExactOrder(4),
            Rel::Eq,
            "sigma",
            "(+ (sum i 1 2 (* (+ (d i) 1) (pow (- (d i) 1) 2))) \
                (sum i 1 3 (pow (- (d i) (d (+ i 1))) 2)) \
                (sum i 2 3 (* (+ (d i) 2) (pow (- (d i) 1) 2))) \
                -2)",
        )
        .with_note("the difference sum is evaluated over in-range consecutive pairs i = 1..3"),
        Claim {
            id: "classoftreessigma_exists".into(),
            statement: "a tree with a support vertex of degree in (3, 10), distinct from a \
                        maximum-degree vertex, is not a sigma-minimizer of its (n, Delta) class"
                .into(),
            scope: Scope::SupportDegreeWindow { low: 3, high: 10 },
            kind: ClaimKind::ExistsSigmaReducer,
            note: None,
        },
        Claim {
            id: "strongsigma_exists".into(),
            statement: "a tree with a strong support vertex of degree >= 3, distinct from a \
                        maximum-degree vertex, is not a sigma-minimizer of its (n, Delta) class"
                .into(),
            scope: Scope::StrongSupportMinDegree(3),
            kind: ClaimKind::ExistsSigmaReducer,
            note: None,
        },
        Claim::relation(
            "mainalb2_formula",
            "irr = d_1^2 + d_n^2 + sum_{i=2..n-1} d_i^2 + sum_{i=2..n-1} d_i \
             + d_n - d_1 - 2n - 2",
            Scope::All,
            Rel::Eq,
            "irr",
            "(- (+ (pow (d 1) 2) (pow (d n) 2) (sum i 2 (- n 1) (pow (d i) 2)) \
                  (sum i 2 (- n 1) (d i)) (d n)) \
               (+ (d 1) (* 2 n) 2))",
        ),
        Claim::relation(
            "thm_sigma_formula",
            "sigma = sum_{i in {1,n}}(d_i+1)(d_i-1)^2 + sum_{i=2..n-1}(d_i+2)(d_i-1)^2 \
             + sum_{i=2..n-1}(d_i-d_{i+1})^2 + 2n - 2",
            Scope::MinOrder(2),
            Rel::Eq,
            "sigma",
            "(+ (* (+ (d 1) 1) (pow (- (d 1) 1) 2)) \
                (* (+ (d n) 1) (pow (- (d n) 1) 2)) \
                (sum i 2 (- n 1) (* (+ (d i) 2) (pow (- (d i) 1) 2))) \
                (sum i 2 (- n 1) (pow (- (d i) (d (+ i 1))) 2)) \
                (* 2 n) -2)",
        )
        .with_note("scope starts at n = 2 so the index set {1, n} has two members"),
        Claim::relation(
            "prozagn1_lower",
            "irr >= M1 + Delta(Delta - 1)",
            Scope::All,
            Rel::Ge,
            "irr",
            "(+ M1 (* Delta (- Delta 1)))",
        ),
        Claim::relation(
            "prozagn2_lower",
            "irr >= 2 sum_i binom(d_i, 2) + 4m/(n-1) - Delta(Delta - 1)",
            Scope::MinOrder(2),
            Rel::Ge,
            "irr",
            "(- (+ (* 2 (sum i 1 n (binom (d i) 2))) (/ (* 4 m) (- n 1))) \
               (* Delta (- Delta 1)))",
        )
        .with_note("scope starts at n = 2 so the division by n - 1 is defined"),
        Claim::relation(
            "prozagrebn1_combined",
            "irr + M1 >= sum_{i=2..n-1} d_i + ((Delta+delta)/2)^2 when all interior \
             degrees equal (Delta+delta)/2",
            Scope::LambdaInterior,
            Rel::Ge,
            "(+ irr M1)",
            "(+ (sum i 2 (- n 1) (d i)) (pow lambda 2))",
        ),
        Claim::relation(
            "mainalb3_formula",
            "irr = M1 + sum_{i=2..n-1} d_i + d_n - d_1 - 2n - 2",
            Scope::All,
            Rel::Eq,
            "irr",
            "(- (+ M1 (sum i 2 (- n 1) (d i)) (d n)) (+ (d 1) (* 2 n) 2))",
        ),
        Claim::relation(
            "mainalb4_upper",
            "irr <= delta(2 delta/(Delta-1) + Delta - 1) + Delta(Delta - 1)",
            Scope::MinMaxDegree(2),
            Rel::Le,
            "irr",
            "(+ (* delta (+ (/ (* 2 delta) (- Delta 1)) Delta -1)) (* Delta (- Delta 1)))",
        )
        .with_note(
            "scope is all trees with maximum degree >= 2: the stated regularity premise \
             is unsatisfiable for nontrivial trees, and Delta >= 2 keeps the \
             denominator nonzero",
        ),
        Claim::relation(
            "thmalbn1_lower",
            "irr >= M1 - (2 m n^2 (Delta-1) + delta - 1)/(n + Delta)",
            Scope::All,
            Rel::Ge,
            "irr",
            &format!("(- M1 {FRACTION})"),
        ),
        Claim::relation(
            "abstract_formula",
            "irr = d_1^2 + d_n^2 + (n-2)((Delta+delta)/2)^2 + sum_{i=2..n-1} d_i \
             + d_n - d_1 - 2n - 2 when all interior degrees equal (Delta+delta)/2",
            Scope::LambdaInterior,
            Rel::Eq,
            "irr",
            "(- (+ (pow (d 1) 2) (pow (d n) 2) (* (- n 2) (pow lambda 2)) \
                  (sum i 2 (- n 1) (d i)) (d n)) \
               (+ (d 1) (* 2 n) 2))",
        ),
        Claim::relation(
            "prozagnsigman1_lower",
            "sigma >= M1 + n Delta^2 (Delta - 1) + m",
            Scope::All,
            Rel::Ge,
            "sigma",
            "(+ M1 (* n (pow Delta 2) (- Delta 1)) m)",
        ),
        Claim::relation(
            "prozagrebn2_combined",
            "sigma + M1 >= sum_{i=2..n-1} d_i + ((Delta+delta)/2)^2 when all interior \
             degrees equal (Delta+delta)/2",
            Scope::LambdaInterior,
            Rel::Ge,
            "(+ sigma M1)",
            "(+ (sum i 2 (- n 1) (d i)) (pow lambda 2))",
        ),
        Claim::relation(
            "thm_sigman3_formula",
            "sigma = M1 + d_1^3 + d_n^3 - d_1 - d_n - d_1^2 - d_n^2 \
             + sum_{i=2..n-1}(d_i - d_{i+1})^2 + 4",
            Scope::All,
            Rel::Eq,
            "sigma",
            "(+ (- (+ M1 (pow (d 1) 3) (pow (d n) 3)) \
                   (+ (d 1) (d n) (pow (d 1) 2) (pow (d n) 2))) \
                (sum i 2 (- n 1) (pow (- (d i) (d (+ i 1))) 2)) \
                4)",
        ),
        Claim::relation(
            "thmsign1_lower",
            "sigma >= M1 - (2 m n^2 (Delta-1) + delta - 1)/(n + Delta)",
            Scope::All,
            Rel::Ge,
            "sigma",
            &format!("(- M1 {FRACTION})"),
        ),
        Claim::relation(
            "m1_edge_identity",
            "sum_v d_v^2 = sum_{uv in E}(d_u + d_v)",
            Scope::All,
            Rel::Eq,
            "(sum i 1 n (pow (d i) 2))",
            "M1edge",
        ),
        Claim::relation(
            "m1_binom_identity",
            "M1 = 2 sum_i binom(d_i, 2) + 2m",
            Scope::All,
            Rel::Eq,
            "M1",
            "(+ (* 2 (sum i 1 n (binom (d i) 2))) (* 2 m))",
        ),
        Claim {
            id: "erdos_gallai".into(),
            statement: "every tree degree sequence passes the Erdős–Gallai realizability test"
                .into(),
            scope: Scope::All,
            kind: ClaimKind::DegreeSequenceGraphic,
            note: None,
        },
    ]
}

#[derive(Debug)]
pub enum ClaimError {
    UnknownClaim(String),
    Eval(EvalError),
    Enumeration(enumerate::EnumError),
    NotPerTree { id: String },
}

impl fmt::Display for ClaimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimError::UnknownClaim(id) => write!(f, "unknown claim id '{id}'"),
            ClaimError::Eval(e) => write!(f, "evaluation error: {e}"),
            ClaimError::Enumeration(e) => write!(f, "{e}"),
            ClaimError::NotPerTree { id } => {
                write!(f, "claim '{id}' is not evaluated per tree")
            }
        }
    }
}

impl std::error::Error for ClaimError {}

impl From<EvalError> for ClaimError {
    fn from(e: EvalError) -> Self {
        ClaimError::Eval(e)
    }
}

impl From<enumerate::EnumError> for ClaimError {
    fn from(e: enumerate::EnumError) -> Self {
        ClaimError::Enumeration(e)
    }
}

/// Outcome of evaluating one claim on one tree.
#[derive(Debug, Clone)]
pub struct ClaimEvaluation {
    /// Canonical key plus one Prüfer witness identifies the tree.
    pub key: CanonicalKey,
    pub witness_code: Option<Vec<u32>>,
    pub in_scope: bool,
    /// Defined only when in scope.
    pub holds: Option<bool>,
    pub lhs: Option<BigRational>,
    pub rhs: Option<BigRational>,
}

/// Sigma minima per `(n, Delta)` class, shared by existence-claim checks.
#[derive(Debug, Default, Clone)]
pub struct ClassMinima {
    by_class: HashMap<(usize, u32), BigInt>,
}

impl ClassMinima {
    pub fn new() -> ClassMinima {
        ClassMinima::default()
    }

    pub fn insert_tree(&mut self, n: usize, max_degree: u32, sigma: &BigInt) {
        self.by_class
            .entry((n, max_degree))
            .and_modify(|cur| {
                if sigma < cur {
                    *cur = sigma.clone();
                }
            })
            .or_insert_with(|| sigma.clone());
    }

    pub fn get(&self, n: usize, max_degree: u32) -> Option<&BigInt> {
        self.by_class.get(&(n, max_degree))
    }

    /// Minima for every class of one order, from exhaustive enumeration.
    pub fn for_order(n: usize, cap: usize) -> Result<ClassMinima, enumerate::EnumError> {
        let mut minima = ClassMinima::new();
        for t in enumerate::nonisomorphic(n, cap)? {
            let stats = TreeStats::new(&t);
            minima.insert_tree(stats.n, stats.max_degree, &stats.sigma);
        }
        Ok(minima)
    }
}

/// Evaluates a per-tree claim. `minima` is needed only by existence claims;
/// when absent it is computed for the tree's own class, which requires the
/// tree's order to be within the enumeration cap.
pub fn evaluate_claim_with(
    claim: &Claim,
    t: &Tree,
    stats: &TreeStats,
    minima: Option<&ClassMinima>,
    reading: Reading,
) -> Result<ClaimEvaluation, ClaimError> {
    let key = canonical_key(t);
    let witness_code = PruferCode::from_tree(t).ok().map(|c| c.as_slice().to_vec());
    let done = |in_scope: bool,
                holds: Option<bool>,
                lhs: Option<BigRational>,
                rhs: Option<BigRational>| {
        Ok(ClaimEvaluation {
            key: key.clone(),
            witness_code: witness_code.clone(),
            in_scope,
            holds,
            lhs,
            rhs,
        })
    };
    if !claim.scope.contains(t, stats) {
        return done(false, None, None, None);
    }
    match &claim.kind {
        ClaimKind::Relation {
            rel,
            lhs,
            rhs,
            require_even_lhs,
            ..
        } => {
            let l = eval(lhs, stats, reading)?;
            let r = eval(rhs, stats, reading)?;
            let mut holds = rel.holds(&l, &r);
            if *require_even_lhs {
                holds = holds && l.is_integer() && l.to_integer().is_even();
            }
            done(true, Some(holds), Some(l), Some(r))
        }
        ClaimKind::ExistsSigmaReducer => {
            let owned;
            let minima = match minima {
                Some(m) => m,
                None => {
                    owned = ClassMinima::for_order(stats.n, HARD_MAX_N)?;
                    &owned
                }
            };
            let min = minima
                .get(stats.n, stats.max_degree)
                .expect("class minima cover every scanned class")
                .clone();
            let holds = stats.sigma > min;
            done(
                true,
                Some(holds),
                Some(BigRational::from_integer(stats.sigma.clone())),
                Some(BigRational::from_integer(min)),
            )
        }
        ClaimKind::StarUniqueIrrMax => {
            let star_irr = BigInt::from(stats.n as i64 - 1) * BigInt::from(stats.n as i64 - 2);
            let holds = if is_star(stats) {
                stats.irr == star_irr
            } else {
                stats.irr < star_irr
            };
            done(
                true,
                Some(holds),
                Some(BigRational::from_integer(stats.irr.clone())),
                Some(BigRational::from_integer(star_irr)),
            )
        }
        ClaimKind::DegreeSequenceGraphic => {
            let ds = crate::degree::DegreeSequence::new(stats.degrees.clone())
                .expect("trees are nonempty");
            let passes = ds.is_graphic();
            let ind = |b: bool| BigRational::from_integer(BigInt::from(b as i64));
            done(true, Some(passes), Some(ind(passes)), Some(ind(true)))
        }
        ClaimKind::CaterpillarExtremal(_) | ClaimKind::DegreeClassMonotone => {
            Err(ClaimError::NotPerTree {
                id: claim.id.clone(),
            })
        }
    }
}

/// Convenience wrapper computing stats (and class minima on demand).
pub fn evaluate_claim(
    claim: &Claim,
    t: &Tree,
    reading: Reading,
) -> Result<ClaimEvaluation, ClaimError> {
    let stats = TreeStats::new(t);
    evaluate_claim_with(claim, t, &stats, None, reading)
}

/// Looks a claim up by id.
pub fn find<'a>(claims: &'a [Claim], id: &str) -> Result<&'a Claim, ClaimError> {
    claims
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| ClaimError::UnknownClaim(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimFileError {
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for ClaimFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim file line {}: {}", self.line, self.reason)
    }
}

impl std::error::Error for ClaimFileError {}

/// Parses user-defined relation claims, one per non-comment line:
/// `(claim <id> <scope> (<rel> <lhs> <rhs>))` with scope one of `all`,
/// `stars`, `caterpillars`, `irr-positive`, `lambda-interior`, `(nmin K)`,
/// `(order K)`, `(deltamin K)`.
pub fn parse_claims_file(text: &str) -> Result<Vec<Claim>, ClaimFileError> {
    let mut claims = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| ClaimFileError {
            line: lineno,
            reason,
        };
        let inner = line
            .strip_prefix("(claim")
            .filter(|s| s.starts_with(char::is_whitespace))
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err("expected (claim <id> <scope> (<rel> <lhs> <rhs>))".into()))?
            .trim();
        let (id, rest) = inner
            .split_once(char::is_whitespace)
            .ok_or_else(|| err("missing claim id".into()))?;
        let rest = rest.trim();
        let (scope, relation_src) = parse_scope_prefix(rest).map_err(err)?;
        let (rel, lhs, rhs) = expr::parse_relation(relation_src).map_err(|e| ClaimFileError {
            line: lineno,
            reason: e.reason,
        })?;
        let (lhs_src, rhs_src) = split_relation_sources(relation_src);
        claims.push(Claim {
            id: id.to_string(),
            statement: format!("{} {} {}", lhs_src, rel.symbol(), rhs_src),
            scope,
            kind: ClaimKind::Relation {
                rel,
                lhs,
                rhs,
                lhs_src,
                rhs_src,
                require_even_lhs: false,
            },
            note: Some("user-defined claim".into()),
        });
    }
    Ok(claims)
}

fn parse_scope_prefix(rest: &str) -> Result<(Scope, &str), String> {
    if let Some(tail) = rest.strip_prefix('(') {
        let word = tail.split_whitespace().next().unwrap_or("");
        if !matches!(word, "nmin" | "order" | "deltamin") {
            // not a scope form; caller forgot the scope
            return Err(format!("unknown scope '({word} ...)'"));
        }
        let close = rest.find(')').ok_or("unterminated scope")?;
        let inside = &rest[1..close];
        let mut parts = inside.split_whitespace();
        let tag = parts.next().unwrap();
        let value: usize = parts
            .next()
            .ok_or("scope needs a value")?
            .parse()
            .map_err(|_| "scope value must be an integer".to_string())?;
        if parts.next().is_some() {
            return Err("too many scope arguments".into());
        }
        let scope = match tag {
            "nmin" => Scope::MinOrder(value),
            "order" => Scope::ExactOrder(value),
            "deltamin" => Scope::MinMaxDegree(value as u32),
            _ => unreachable!(),
        };
        return Ok((scope, rest[close + 1..].trim_start()));
    }
    let (word, tail) = rest
        .split_once(char::is_whitespace)
        .ok_or_else(|| "missing relation after scope".to_string())?;
    let scope = match word {
        "all" => Scope::All,
        "stars" => Scope::Stars,
        "caterpillars" => Scope::Caterpillars,
        "irr-positive" => Scope::PositiveIrr,
        "lambda-interior" => Scope::LambdaInterior,
        other => return Err(format!("unknown scope '{other}'")),
    };
    Ok((scope, tail.trim_start()))
}

/// Best-effort split of `(rel lhs rhs)` into the two operand sources for
/// display; the parsed expressions are authoritative.
fn split_relation_sources(relation_src: &str) -> (String, String) {
    let inner = relation_src
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(relation_src);
    let inner = inner.trim_start_matches(['=', '<', '>']).trim_start();
    let mut depth = 0usize;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c.is_whitespace() && depth == 0 => {
                return (inner[..i].trim().to_string(), inner[i..].trim().to_string());
            }
            _ => {}
        }
    }
    (inner.trim().to_string(), String::new())
}
