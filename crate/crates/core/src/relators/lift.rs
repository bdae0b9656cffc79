//! The relator catalogue: partiality, Hausdorff, Wasserstein (plain, bottomed,
//! and the state composite), conversive meets, and the induced boolean
//! (kernel) relators.
//!
//! Relators are applied through a lookup closure for the underlying relation,
//! which is how the distance engine feeds memoized tables into them; finite
//! table versions over explicit carriers are provided for the law suites.

use super::transport::{solve_transport, TransportProblem};
use super::vrel::VRelation;
use crate::effects::{EffectSig, MValue, Mass, MonadTag, State};
use crate::error::Error;
use crate::quantale::{Quantale, QuantaleElem};
use crate::Result;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use num_traits::{One, Zero};

/// Which lifting turns a relation on values into a relation on monadic
/// values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelatorCfg {
    /// `(−)⊥`: bottom on the left relates to everything.
    Partiality,
    /// Hausdorff meet-of-joins lifting on finite sets.
    Hausdorff,
    /// `Hˢ = H ∧ H°`.
    HausdorffSym,
    /// Wasserstein lifting on full (mass-1) distributions.
    Wasserstein,
    /// `W⊥ = W · (−)⊥`: Wasserstein on subdistributions, totalized with an
    /// explicit bottom atom carrying the missing mass.
    WassersteinBot,
    /// The state composite `sup_b W⊥(id_S + α)(m(b), n(b))`.
    StateComposite,
    /// `Γ ∧ Γ°`, the greatest conversive relator below `Γ`. For the state
    /// composite this combination is definable but unnamed in the
    /// literature we follow; treat it as experimental.
    ConversiveMeet(Box<RelatorCfg>),
}

impl RelatorCfg {
    /// Resolves a CLI name, wrapping in `ConversiveMeet` when a conversive
    /// (bisimulation) relator is requested.
    pub fn from_name(name: &str, monad: MonadTag, conversive: bool) -> Result<RelatorCfg> {
        let base = match name {
            "auto" => return Ok(RelatorCfg::auto(monad, conversive)),
            "partial" => RelatorCfg::Partiality,
            "hausdorff" => RelatorCfg::Hausdorff,
            "hausdorff-sym" => RelatorCfg::HausdorffSym,
            "wasserstein" => RelatorCfg::Wasserstein,
            "wasserstein-bot" => RelatorCfg::WassersteinBot,
            "state" => RelatorCfg::StateComposite,
            other => {
                return Err(Error::InvalidConfig(format!("unknown relator '{other}'")));
            }
        };
        Ok(if conversive { RelatorCfg::ConversiveMeet(Box::new(base)) } else { base })
    }

    /// The default relator for each monad: simulation liftings, or their
    /// conversive meets for bisimulation.
    pub fn auto(monad: MonadTag, conversive: bool) -> RelatorCfg {
        let base = match monad {
            MonadTag::Partial => RelatorCfg::Partiality,
            MonadTag::Powerset => RelatorCfg::Hausdorff,
            MonadTag::SubDist => RelatorCfg::WassersteinBot,
            MonadTag::State => RelatorCfg::StateComposite,
        };
        match (conversive, monad) {
            (false, _) => base,
            (true, MonadTag::Powerset) => RelatorCfg::HausdorffSym,
            (true, _) => RelatorCfg::ConversiveMeet(Box::new(base)),
        }
    }

    fn base_monad(&self) -> MonadTag {
        match self {
            RelatorCfg::Partiality => MonadTag::Partial,
            RelatorCfg::Hausdorff | RelatorCfg::HausdorffSym => MonadTag::Powerset,
            RelatorCfg::Wasserstein | RelatorCfg::WassersteinBot => MonadTag::SubDist,
            RelatorCfg::StateComposite => MonadTag::State,
            RelatorCfg::ConversiveMeet(inner) => inner.base_monad(),
        }
    }

    /// Validates the quantale/monad combination.
    pub fn validate(&self, q: Quantale, monad: MonadTag) -> Result<()> {
        if self.base_monad() != monad {
            return Err(Error::InvalidConfig(format!(
                "relator expects the {} monad, got {}",
                self.base_monad().name(),
                monad.name()
            )));
        }
        let needs_unit = matches!(
            self.strip_meet(),
            RelatorCfg::Wasserstein | RelatorCfg::WassersteinBot | RelatorCfg::StateComposite
        );
        if needs_unit && q != Quantale::UnitInterval {
            return Err(Error::InvalidConfig(
                "Wasserstein liftings require the unit-interval quantale".to_string(),
            ));
        }
        Ok(())
    }

    fn strip_meet(&self) -> &RelatorCfg {
        match self {
            RelatorCfg::ConversiveMeet(inner) => inner.strip_meet(),
            other => other,
        }
    }
}

/// Applies the relator to a pair of monadic values, looking the underlying
/// relation up through `alpha`.
pub fn apply_relator<E: Ord + Clone>(
    cfg: &RelatorCfg,
    q: Quantale,
    m: &MValue<E>,
    n: &MValue<E>,
    alpha: &mut dyn FnMut(&E, &E) -> Result<QuantaleElem>,
) -> Result<QuantaleElem> {
    match cfg {
        RelatorCfg::Partiality => match (m, n) {
            (MValue::Partial(a), MValue::Partial(b)) => lift_partial_at(q, a.as_ref(), b.as_ref(), alpha),
            _ => Err(wrong_monad(MonadTag::Partial, m, n)),
        },
        RelatorCfg::Hausdorff => match (m, n) {
            (MValue::Pow(a), MValue::Pow(b)) => hausdorff_at(q, a, b, alpha),
            _ => Err(wrong_monad(MonadTag::Powerset, m, n)),
        },
        RelatorCfg::HausdorffSym => {
            let fwd = apply_relator(&RelatorCfg::Hausdorff, q, m, n, alpha)?;
            let bwd = apply_relator(&RelatorCfg::Hausdorff, q, n, m, &mut |x, y| alpha(y, x))?;
            q.meet([fwd, bwd].iter())
        }
        RelatorCfg::Wasserstein => match (m, n) {
            (MValue::SubDist(a), MValue::SubDist(b)) => {
                expect_unit_quantale(q)?;
                if a.values().sum::<Mass>() != Mass::one() || b.values().sum::<Mass>() != Mass::one()
                {
                    return Err(Error::UnbalancedTransport {
                        left: format!("{}", a.values().sum::<Mass>()),
                        right: format!("{}", b.values().sum::<Mass>()),
                    });
                }
                wasserstein_dists(q, a, b, alpha)
            }
            _ => Err(wrong_monad(MonadTag::SubDist, m, n)),
        },
        RelatorCfg::WassersteinBot => match (m, n) {
            (MValue::SubDist(a), MValue::SubDist(b)) => {
                expect_unit_quantale(q)?;
                wasserstein_bot_dists(q, a, b, alpha)
            }
            _ => Err(wrong_monad(MonadTag::SubDist, m, n)),
        },
        RelatorCfg::StateComposite => match (m, n) {
            (MValue::State(a), MValue::State(b)) => {
                expect_unit_quantale(q)?;
                if a.keys().ne(b.keys()) {
                    return Err(Error::CarrierMismatch(
                        "state kernels over different state spaces".to_string(),
                    ));
                }
                let mut per_state = Vec::new();
                for (bst, da) in a {
                    let db = &b[bst];
                    per_state.push(wasserstein_bot_dists(q, da, db, &mut |(b1, x), (b2, y)| {
                        if b1 != b2 {
                            Ok(q.bot())
                        } else {
                            alpha(x, y)
                        }
                    })?);
                }
                // sup over states in the real reading is the quantale meet.
                q.meet(per_state.iter())
            }
            _ => Err(wrong_monad(MonadTag::State, m, n)),
        },
        RelatorCfg::ConversiveMeet(inner) => {
            let fwd = apply_relator(inner, q, m, n, alpha)?;
            let bwd = apply_relator(inner, q, n, m, &mut |x, y| alpha(y, x))?;
            q.meet([fwd, bwd].iter())
        }
    }
}

/// The induced boolean relator `Δ_Γ R = φ ∘ Γ(ψ ∘ R)`, with `ψ/φ` taken in
/// `value_quantale`.
pub fn kernel_relator<E: Ord + Clone>(
    cfg: &RelatorCfg,
    value_quantale: Quantale,
    m: &MValue<E>,
    n: &MValue<E>,
    rel: &mut dyn FnMut(&E, &E) -> Result<bool>,
) -> Result<bool> {
    let lifted = apply_relator(cfg, value_quantale, m, n, &mut |x, y| {
        Ok(value_quantale.psi(rel(x, y)?))
    })?;
    value_quantale.phi(&lifted)
}

fn wrong_monad<E: Ord + Clone>(expected: MonadTag, m: &MValue<E>, n: &MValue<E>) -> Error {
    Error::MonadMismatch {
        expected: expected.name().to_string(),
        found: format!("{} / {}", m.tag().name(), n.tag().name()),
    }
}

fn expect_unit_quantale(q: Quantale) -> Result<()> {
    if q == Quantale::UnitInterval {
        Ok(())
    } else {
        Err(Error::QuantaleMismatch {
            expected: Quantale::UnitInterval.name().to_string(),
            found: q.name().to_string(),
        })
    }
}

/// `α⊥`: bottom on the left relates at `k`, bottom on the right at `⊥`.
fn lift_partial_at<E>(
    q: Quantale,
    a: Option<&E>,
    b: Option<&E>,
    alpha: &mut dyn FnMut(&E, &E) -> Result<QuantaleElem>,
) -> Result<QuantaleElem> {
    match (a, b) {
        (None, _) => Ok(q.unit()),
        (Some(_), None) => Ok(q.bot()),
        (Some(x), Some(y)) => alpha(x, y),
    }
}

/// `Hα(X, Y) = ⋀_{x∈X} ⋁_{y∈Y} α(x, y)`; the empty meet is `k`, the empty
/// join `⊥`.
fn hausdorff_at<E: Ord>(
    q: Quantale,
    xs: &BTreeSet<E>,
    ys: &BTreeSet<E>,
    alpha: &mut dyn FnMut(&E, &E) -> Result<QuantaleElem>,
) -> Result<QuantaleElem> {
    let mut meets = Vec::new();
    for x in xs {
        let mut joins = Vec::new();
        for y in ys {
            joins.push(alpha(x, y)?);
        }
        meets.push(q.join(joins.iter())?);
    }
    q.meet(meets.iter())
}

fn cost_rational(elem: &QuantaleElem) -> Result<Mass> {
    elem.as_finite().cloned().ok_or_else(|| {
        Error::QuantaleMismatch {
            expected: "a finite unit-interval cost".to_string(),
            found: format!("{elem}"),
        }
    })
}

/// Wasserstein distance between two mass-1 distributions via the exact
/// transportation solver.
fn wasserstein_dists<A: Ord + Clone>(
    q: Quantale,
    left: &BTreeMap<A, Mass>,
    right: &BTreeMap<A, Mass>,
    cost: &mut dyn FnMut(&A, &A) -> Result<QuantaleElem>,
) -> Result<QuantaleElem> {
    let xs: Vec<&A> = left.keys().collect();
    let ys: Vec<&A> = right.keys().collect();
    let mut costs = Vec::with_capacity(xs.len());
    for x in &xs {
        let mut row = Vec::with_capacity(ys.len());
        for y in &ys {
            row.push(cost_rational(&cost(x, y)?)?);
        }
        costs.push(row);
    }
    let problem = TransportProblem {
        supplies: left.values().cloned().collect(),
        demands: right.values().cloned().collect(),
        costs,
    };
    let solution = solve_transport(&problem)?;
    q.elem_num(crate::rational::ExtRat::from_big(solution.cost))
}

/// `W⊥`: totalizes both subdistributions with an explicit bottom atom
/// carrying the missing mass (`α⊥(⊥, ·) = 0`, `α⊥(·, ⊥) = 1` in the real
/// reading) and runs the full Wasserstein lifting.
pub(crate) fn wasserstein_bot_dists<A: Ord + Clone>(
    q: Quantale,
    left: &BTreeMap<A, Mass>,
    right: &BTreeMap<A, Mass>,
    cost: &mut dyn FnMut(&A, &A) -> Result<QuantaleElem>,
) -> Result<QuantaleElem> {
    let totalize = |d: &BTreeMap<A, Mass>| -> (Vec<Option<A>>, Vec<Mass>) {
        let mut atoms: Vec<Option<A>> = d.keys().cloned().map(Some).collect();
        let mut masses: Vec<Mass> = d.values().cloned().collect();
        let deficit = Mass::one() - masses.iter().sum::<Mass>();
        if !deficit.is_zero() {
            atoms.push(None);
            masses.push(deficit);
        }
        (atoms, masses)
    };
    let (xs, supplies) = totalize(left);
    let (ys, demands) = totalize(right);
    let mut costs = Vec::with_capacity(xs.len());
    for x in &xs {
        let mut row = Vec::with_capacity(ys.len());
        for y in &ys {
            let c = match (x, y) {
                (None, _) => Mass::zero(),
                (Some(_), None) => Mass::one(),
                (Some(x), Some(y)) => cost_rational(&cost(x, y)?)?,
            };
            row.push(c);
        }
        costs.push(row);
    }
    let solution = solve_transport(&TransportProblem { supplies, demands, costs })?;
    q.elem_num(crate::rational::ExtRat::from_big(solution.cost))
}

/// Table version of `(−)⊥` over explicit carriers.
pub fn lift_partial<E: Ord + Clone>(alpha: &VRelation<E>) -> VRelation<Option<E>> {
    let q = alpha.quantale();
    let embed = |xs: &[E]| -> Vec<Option<E>> {
        core::iter::once(None).chain(xs.iter().cloned().map(Some)).collect()
    };
    let mut out = VRelation::new(
        q,
        q.bot(),
        embed(alpha.left_carrier()),
        embed(alpha.right_carrier()),
    );
    for y in out.right_carrier().to_vec() {
        out.set(None, y, q.unit()).expect("same quantale");
    }
    for x in alpha.left_carrier().to_vec() {
        for y in alpha.right_carrier().to_vec() {
            let v = alpha.get(&x, &y);
            out.set(Some(x.clone()), Some(y), v).expect("same quantale");
        }
    }
    out
}

/// Table version of the Hausdorff lifting over explicit set carriers.
pub fn lift_hausdorff<E: Ord + Clone>(
    alpha: &VRelation<E>,
    left_sets: &[BTreeSet<E>],
    right_sets: &[BTreeSet<E>],
    symmetric: bool,
) -> Result<VRelation<BTreeSet<E>>> {
    let q = alpha.quantale();
    let cfg = if symmetric { RelatorCfg::HausdorffSym } else { RelatorCfg::Hausdorff };
    let mut out = VRelation::new(q, q.bot(), left_sets.to_vec(), right_sets.to_vec());
    for xs in left_sets {
        for ys in right_sets {
            let v = apply_relator(
                &cfg,
                q,
                &MValue::Pow(xs.clone()),
                &MValue::Pow(ys.clone()),
                &mut |x, y| Ok(alpha.get(x, y)),
            )?;
            out.set(xs.clone(), ys.clone(), v)?;
        }
    }
    Ok(out)
}

/// Table version of `W` / `W⊥` over explicit (sub)distribution carriers.
pub fn lift_wasserstein<E: Ord + Clone>(
    alpha: &VRelation<E>,
    left: &[BTreeMap<E, Mass>],
    right: &[BTreeMap<E, Mass>],
    bottomed: bool,
) -> Result<VRelation<BTreeMap<E, Mass>>> {
    let q = alpha.quantale();
    let cfg = if bottomed { RelatorCfg::WassersteinBot } else { RelatorCfg::Wasserstein };
    let mut out = VRelation::new(q, q.bot(), left.to_vec(), right.to_vec());
    for mu in left {
        for nu in right {
            let v = apply_relator(
                &cfg,
                q,
                &MValue::SubDist(mu.clone()),
                &MValue::SubDist(nu.clone()),
                &mut |x, y| Ok(alpha.get(x, y)),
            )?;
            out.set(mu.clone(), nu.clone(), v)?;
        }
    }
    Ok(out)
}

/// The state composite applied to two kernels (convenience wrapper); both
/// kernels must be total over the signature's state space.
pub fn lift_state<E: Ord + Clone>(
    alpha: &VRelation<E>,
    sig: &EffectSig,
    m: &BTreeMap<State, BTreeMap<(State, E), Mass>>,
    n: &BTreeMap<State, BTreeMap<(State, E), Mass>>,
) -> Result<QuantaleElem> {
    let q = alpha.quantale();
    let states = sig.states();
    for kernel in [m, n] {
        if kernel.keys().ne(states.iter()) {
            return Err(Error::CarrierMismatch(
                "kernel is not total on the configured state space".to_string(),
            ));
        }
    }
    apply_relator(
        &RelatorCfg::StateComposite,
        q,
        &MValue::State(m.clone()),
        &MValue::State(n.clone()),
        &mut |x, y| Ok(alpha.get(x, y)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ExtRat;

    fn unit_q() -> Quantale {
        Quantale::UnitInterval
    }

    fn uelem(p: u64, q: u64) -> QuantaleElem {
        unit_q().elem_num(ExtRat::from_ratio(p, q)).unwrap()
    }

    #[test]
    fn partial_lifting_clauses() {
        let q = Quantale::Lawvere;
        let third = q.elem_num(ExtRat::from_ratio(1, 3)).unwrap();
        let mut alpha = |_: &u32, _: &u32| Ok(third.clone());
        let none: MValue<u32> = MValue::Partial(None);
        let some1 = MValue::Partial(Some(1u32));
        let some2 = MValue::Partial(Some(2u32));
        let cfg = RelatorCfg::Partiality;
        assert_eq!(apply_relator(&cfg, q, &none, &some1, &mut alpha).unwrap(), q.unit());
        assert_eq!(apply_relator(&cfg, q, &some1, &none, &mut alpha).unwrap(), q.bot());
        assert_eq!(apply_relator(&cfg, q, &some1, &some2, &mut alpha).unwrap(), third);
    }

    #[test]
    fn hausdorff_on_empty_sets() {
        let q = Quantale::Lawvere;
        let mut alpha = |_: &u32, _: &u32| Ok(q.unit());
        let empty: MValue<u32> = MValue::Pow(BTreeSet::new());
        let full = MValue::Pow([1u32].into_iter().collect());
        let cfg = RelatorCfg::Hausdorff;
        assert_eq!(apply_relator(&cfg, q, &empty, &full, &mut alpha).unwrap(), q.unit());
        assert_eq!(apply_relator(&cfg, q, &full, &empty, &mut alpha).unwrap(), q.bot());
    }

    #[test]
    fn symmetric_hausdorff_takes_the_worse_direction() {
        // Two-point space, α(x,y) = 1/3 off-diagonal, 0 on the diagonal.
        let q = Quantale::Lawvere;
        let mut alpha = |x: &u32, y: &u32| {
            Ok(if x == y { q.unit() } else { q.elem_num(ExtRat::from_ratio(1, 3)).unwrap() })
        };
        let xs: MValue<u32> = MValue::Pow([0u32].into_iter().collect());
        let xy: MValue<u32> = MValue::Pow([0u32, 1].into_iter().collect());
        let sym = apply_relator(&RelatorCfg::HausdorffSym, q, &xs, &xy, &mut alpha).unwrap();
        assert_eq!(sym, q.elem_num(ExtRat::from_ratio(1, 3)).unwrap());
        // The one-directional lifting sees only the cheap direction.
        let fwd = apply_relator(&RelatorCfg::Hausdorff, q, &xs, &xy, &mut alpha).unwrap();
        assert_eq!(fwd, q.unit());
    }

    #[test]
    fn wasserstein_bot_of_bottom_is_zero() {
        let q = unit_q();
        let mut alpha = |_: &u32, _: &u32| Ok(q.bot());
        let bot: MValue<u32> = MValue::SubDist(BTreeMap::new());
        let nu = MValue::subdist([(1u32, Mass::new(1.into(), 2.into()))]).unwrap();
        let d = apply_relator(&RelatorCfg::WassersteinBot, q, &bot, &nu, &mut alpha).unwrap();
        assert_eq!(d, q.unit());
    }

    #[test]
    fn wasserstein_bot_charges_missing_mass() {
        let q = unit_q();
        let mut alpha = |x: &u32, y: &u32| Ok(if x == y { q.unit() } else { q.bot() });
        let mu = MValue::subdist([(1u32, Mass::one())]).unwrap();
        let nu = MValue::subdist([(1u32, Mass::new(1.into(), 2.into()))]).unwrap();
        let d = apply_relator(&RelatorCfg::WassersteinBot, q, &mu, &nu, &mut alpha).unwrap();
        assert_eq!(d, uelem(1, 2));
        // The other direction is free: bottom on the left relates at 0.
        let d = apply_relator(&RelatorCfg::WassersteinBot, q, &nu, &mu, &mut alpha).unwrap();
        assert_eq!(d, q.unit());
    }

    #[test]
    fn state_composite_detects_a_differing_write() {
        let q = unit_q();
        let sig = EffectSig::new(MonadTag::State, alloc::vec!["l".to_string()]).unwrap();
        let mut alpha = |x: &u32, y: &u32| Ok(if x == y { q.unit() } else { q.bot() });
        // m writes 0, n writes 1, both return atom 7.
        let mk = |target: State| -> MValue<u32> {
            MValue::State(
                sig.states()
                    .into_iter()
                    .map(|b| (b, [((target, 7u32), Mass::one())].into_iter().collect()))
                    .collect(),
            )
        };
        let m = mk(0);
        let n = mk(1);
        let d = apply_relator(&RelatorCfg::StateComposite, q, &m, &n, &mut alpha).unwrap();
        assert_eq!(d, q.bot());
        let d = apply_relator(&RelatorCfg::StateComposite, q, &m, &m, &mut alpha).unwrap();
        assert_eq!(d, q.unit());
    }

    #[test]
    fn state_composite_takes_sup_over_states() {
        let q = unit_q();
        let _sig = EffectSig::new(MonadTag::State, alloc::vec!["l".to_string()]).unwrap();
        let third = uelem(1, 3);
        let mut alpha = {
            let third = third.clone();
            move |x: &u32, y: &u32| {
                Ok(if x == y { q.unit() } else { third.clone() })
            }
        };
        // Identical kernels except the atoms differ (at distance 1/3) when
        // started from state 1.
        let mk = |atom_at_one: u32| -> MValue<u32> {
            MValue::State(
                [(0u32, [((0u32, 5u32), Mass::one())].into_iter().collect()),
                 (1u32, [((1u32, atom_at_one), Mass::one())].into_iter().collect())]
                .into_iter()
                .collect(),
            )
        };
        let m = mk(5);
        let n = mk(6);
        let d = apply_relator(&RelatorCfg::StateComposite, q, &m, &n, &mut alpha).unwrap();
        assert_eq!(d, third);
    }

    #[test]
    fn kernel_relators_recover_boolean_clauses() {
        let q = unit_q();
        // Δ_(−)⊥: bottom related to everything.
        let none: MValue<u32> = MValue::Partial(None);
        let some = MValue::Partial(Some(1u32));
        let mut never = |_: &u32, _: &u32| Ok(false);
        assert!(kernel_relator(&RelatorCfg::Partiality, q, &none, &some, &mut never).unwrap());
        assert!(!kernel_relator(&RelatorCfg::Partiality, q, &some, &none, &mut never).unwrap());
        // Δ_H: the ∀∃ simulation clause on two-element sets.
        let xs: MValue<u32> = MValue::Pow([0u32, 1].into_iter().collect());
        let ys: MValue<u32> = MValue::Pow([2u32, 3].into_iter().collect());
        let mut shift = |x: &u32, y: &u32| Ok(*y == x + 2);
        assert!(kernel_relator(&RelatorCfg::Hausdorff, q, &xs, &ys, &mut shift).unwrap());
        let mut only_one = |x: &u32, y: &u32| Ok(*x == 0 && *y == 2);
        assert!(!kernel_relator(&RelatorCfg::Hausdorff, q, &xs, &ys, &mut only_one).unwrap());
        // Δ_W on Diracs is the underlying relation.
        let d1 = MValue::subdist([(1u32, Mass::one())]).unwrap();
        let d2 = MValue::subdist([(2u32, Mass::one())]).unwrap();
        let mut rel12 = |x: &u32, y: &u32| Ok(*x == 1 && *y == 2);
        assert!(kernel_relator(&RelatorCfg::Wasserstein, q, &d1, &d2, &mut rel12).unwrap());
        assert!(!kernel_relator(&RelatorCfg::Wasserstein, q, &d2, &d1, &mut rel12).unwrap());
    }

    #[test]
    fn hausdorff_symmetric_example_via_tables() {
        let q = Quantale::Lawvere;
        let mut alpha = VRelation::new(q, q.unit(), alloc::vec![0u32, 1], alloc::vec![0u32, 1]);
        alpha.set(0, 1, q.elem_num(ExtRat::from_ratio(1, 3)).unwrap()).unwrap();
        alpha.set(1, 0, q.elem_num(ExtRat::from_ratio(1, 3)).unwrap()).unwrap();
        let singleton: BTreeSet<u32> = [0].into_iter().collect();
        let both: BTreeSet<u32> = [0, 1].into_iter().collect();
        let sets = alloc::vec![singleton.clone(), both.clone()];
        let lifted = lift_hausdorff(&alpha, &sets, &sets, true).unwrap();
        assert_eq!(lifted.get(&singleton, &both), q.elem_num(ExtRat::from_ratio(1, 3)).unwrap());
    }
}
