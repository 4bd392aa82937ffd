//! A-submodules, quotients, Jacobians and G_max.

use super::structure::AModule;
use crate::coeffs::APoly;
use crate::error::{Error, Result};
use crate::orelat::{OreMatrix, TauSubmodule};
use crate::qvar::{quotient, Morphism, QVariety};

#[derive(Clone, Debug)]
pub struct AdditivityReport {
    pub rank_f: usize,
    pub rank_h: usize,
    pub rank_quotient: usize,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct ExactnessEntry {
    pub a: APoly,
    pub dim_f: usize,
    pub dim_h: usize,
    pub dim_quotient: usize,
    /// Φ_a maps H onto H; only then is the comparison made.
    pub checked: bool,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ExactnessReport {
    pub entries: Vec<ExactnessEntry>,
    pub passed: bool,
}

impl AModule {
    fn require_subvariety(&self, h: &QVariety) -> Result<()> {
        if !self.carrier().contains_variety(h)? {
            return Err(Error::NotASubvariety);
        }
        Ok(())
    }

    /// Φ_T(H) ⊆ H.
    pub fn is_a_submodule(&self, h: &QVariety) -> Result<bool> {
        self.require_subvariety(h)?;
        match Morphism::new(h, h, self.phi_t().matrix()) {
            Ok(_) => Ok(true),
            Err(Error::NotAMorphismInto) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// The induced structure on an A-submodule H.
    pub fn restrict(&self, h: &QVariety) -> Result<AModule> {
        if !self.is_a_submodule(h)? {
            return Err(Error::NotASubmodule);
        }
        AModule::new(h, self.phi_t().matrix(), self.delta())
    }

    /// The induced structure on F/H together with the projection Π. With Π
    /// built from generators h_i of M(H), each h_i·L_T lies in M(H), and its
    /// cofactors give Φ̄_T with Π∘Φ_T = Φ̄_T∘Π.
    pub fn quotient_by(&self, h: &QVariety) -> Result<(AModule, Morphism)> {
        if !self.is_a_submodule(h)? {
            return Err(Error::NotASubmodule);
        }
        let (q, pi) = quotient(self.carrier(), h)?;
        let k = pi.field().clone();
        let rows = pi.matrix().clone();
        let gens = TauSubmodule::new(rows.clone());
        let lt = self.phi_t().matrix().coerce(&k)?;
        let m = rows.rows();
        let mut induced = Vec::with_capacity(m);
        for i in 0..m {
            let pulled = crate::orelat::row_times(rows.row_slice(i), &lt);
            let c = gens
                .cofactors(&pulled)?
                .ok_or_else(|| Error::Invariant("h·Φ_T left M(H)".into()))?;
            induced.push(c);
        }
        let lbar = OreMatrix::from_rows(&k, m, induced)?;
        let qm = AModule::new(&q, &lbar, &k.coerce(self.delta()))?;
        Ok((qm, pi))
    }

    /// r(F) = r(H) + r(F/H), each rank by torsion majority.
    pub fn rank_additivity_check(&self, h: &QVariety, budget: Option<usize>) -> Result<AdditivityReport> {
        let sub = self.restrict(h)?;
        let (quo, _) = self.quotient_by(h)?;
        let rank_f = self.rank(budget)?.rank;
        let rank_h = sub.rank(budget)?.rank;
        let rank_quotient = quo.rank(budget)?.rank;
        Ok(AdditivityReport { rank_f, rank_h, rank_quotient, passed: rank_f == rank_h + rank_quotient })
    }

    /// dim Tor(a, F) = dim Tor(a, H) + dim Tor(a, F/H) for each a ∉ ker δ
    /// with Φ_a(H) = H; at least one a must qualify.
    pub fn torsion_exactness_check(&self, h: &QVariety, samples: &[APoly]) -> Result<ExactnessReport> {
        let sub = self.restrict(h)?;
        let (quo, _) = self.quotient_by(h)?;
        let mut entries = Vec::with_capacity(samples.len());
        for a in samples {
            if self.in_ker_delta(a) {
                continue;
            }
            let onto = sub.phi(a)?.image()?.equals(sub.carrier())?;
            let dim_f = self.torsion(a, None)?.dim_fq;
            let dim_h = sub.torsion(a, None)?.dim_fq;
            let dim_quotient = quo.torsion(a, None)?.dim_fq;
            entries.push(ExactnessEntry {
                a: a.clone(),
                dim_f,
                dim_h,
                dim_quotient,
                checked: onto,
                holds: dim_f == dim_h + dim_quotient,
            });
        }
        let passed = entries.iter().any(|e| e.checked) && entries.iter().all(|e| !e.checked || e.holds);
        Ok(ExactnessReport { entries, passed })
    }

    /// The smallest A-submodule containing H: H_{k+1} = H_k + Φ_T(H_k)
    /// until stable, at most `cap` steps.
    pub fn jacobian(&self, h: &QVariety, cap: usize) -> Result<(QVariety, usize)> {
        self.require_subvariety(h)?;
        let lt = self.phi_t().matrix();
        let mut cur = h.coerce(self.field())?;
        for step in 0..cap {
            let img = Morphism::new(&cur, self.carrier(), lt)?.image()?;
            let next = cur.sum(&img)?;
            if next.equals(&cur)? {
                return Ok((cur, step));
            }
            cur = next;
        }
        Err(Error::Capability(format!("Jacobian did not stabilize within {cap} steps")))
    }

    /// The largest irreducible Φ_T-stable sub-q-variety of H:
    /// G_0 = H̊, G_{k+1} = (G_k ∩ Φ_T^{-1}(G_k))° until stable.
    pub fn g_max(&self, h: &QVariety) -> Result<QVariety> {
        self.require_subvariety(h)?;
        let mut cur = h.coerce(self.field())?.irreducible_component();
        for _ in 0..=self.carrier().n() + 1 {
            let pre = self.phi_t().preimage(&cur)?;
            let next = cur.intersection(&pre)?.irreducible_component();
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::Invariant("G_max iteration did not stabilize".into()))
    }

    pub fn is_sufficiently_generic(&self, h: &QVariety) -> Result<bool> {
        let g = self.g_max(h)?;
        Ok(g.dimension() == 0)
    }
}
