//! Named construction of every finite group and homomorphism of the
//! monomial-group family at a given odd prime p, with canonical generator
//! orderings used throughout the cohomology layers.

use crate::error::Result;
use crate::fp;
use crate::group::{FiniteGroup, Group, DEFAULT_CAP};
use crate::hom::Homomorphism;
use crate::monomial::{delta, gamma1, gamma2, standard_generators, MonomialElement};

/// The group family at an odd prime p <= 7. All one-factor subgroups of
/// SU(p) are realized in the first factor of the two-factor model.
pub struct Catalog {
    pub p: u8,
    /// scalar xi, alpha, beta, sigma_1..sigma_p embedded three ways
    pub d_xi: MonomialElement,
    pub g1_xi: MonomialElement,
    pub g2_xi: MonomialElement,
    pub d_alpha: MonomialElement,
    pub g1_alpha: MonomialElement,
    pub g2_alpha: MonomialElement,
    pub d_beta: MonomialElement,
    pub g1_beta: MonomialElement,
    pub g2_beta: MonomialElement,
    pub g1_sigma: Vec<MonomialElement>,
    pub g2_sigma: Vec<MonomialElement>,

    /// extraspecial p_+^{1+2} = <alpha, beta, xi> (first factor)
    pub pplus: Group,
    /// A_2 = p_+^{1+2} / <xi>
    pub a2: Group,
    /// projection pplus -> a2
    pub pi_pplus: Homomorphism,
    /// H_2 = <beta, sigma_1..sigma_p> (first factor)
    pub h2: Group,
    /// pi(H_2) = H_2 / <xi>
    pub pi_h2: Group,
    /// projection h2 -> pi_h2
    pub pi_h2_proj: Homomorphism,
    /// <sigma_1> (cyclic of order p^2) and its image <pi(sigma_1)>
    pub sigma1_cyclic: Group,
    pub pi_sigma1: Group,
    /// <beta, xi> and <pi(beta)>
    pub beta_xi: Group,
    pub pi_beta: Group,
    /// inclusions into pi_h2
    pub iota_sigma: Homomorphism,
    pub iota_beta: Homomorphism,
    /// inclusion p_+^{1+2} -> H_2
    pub iota_pplus_h2: Homomorphism,
}

/// The two-factor family; built on demand because H is large for p = 5.
pub struct CatalogH {
    pub p: u8,
    /// the product p_+^{1+2} x H_2 inside SU(p) x SU(p)
    pub pre_h: Option<Group>,
    /// H = p_+^{1+2} x H_2 / <Delta(xi)>
    pub h: Group,
    /// A_3, A_3' (elementary abelian rank 3 subquotients)
    pub a3: Group,
    pub a3p: Group,
    /// pi(H) = H / <Gamma_2(xi)>
    pub pi_h: Group,
    pub pi_h_proj: Homomorphism,
    /// A_2 x pi(H_2) realized as a subquotient of the two-factor model
    pub a2_x_pih2: Group,
    /// inclusions A_3 -> H, A_3' -> H
    pub g_up: Homomorphism,
    pub gp_up: Homomorphism,
    /// the canonical identification pi(H) -> A_2 x pi(H_2)
    pub pi_h_iso: Homomorphism,
    /// Delta-image of A_2 inside H (for character restrictions)
    pub delta_a2_in_h: Group,
}

impl Catalog {
    pub fn new(p: u32) -> Result<Catalog> {
        Self::new_with_cap(p, DEFAULT_CAP)
    }

    pub fn new_with_cap(p: u32, cap: usize) -> Result<Catalog> {
        let sg = standard_generators(p)?;
        let p8 = sg.p;
        let d_xi = delta(p8, sg.xi);
        let g1_xi = gamma1(p8, sg.xi);
        let g2_xi = gamma2(p8, sg.xi);
        let d_alpha = delta(p8, sg.alpha);
        let g1_alpha = gamma1(p8, sg.alpha);
        let g2_alpha = gamma2(p8, sg.alpha);
        let d_beta = delta(p8, sg.beta);
        let g1_beta = gamma1(p8, sg.beta);
        let g2_beta = gamma2(p8, sg.beta);
        let g1_sigma: Vec<_> = sg.sigma.iter().map(|&s| gamma1(p8, s)).collect();
        let g2_sigma: Vec<_> = sg.sigma.iter().map(|&s| gamma2(p8, s)).collect();

        let pplus = FiniteGroup::generate(p8, &[g1_alpha, g1_beta, g1_xi], cap)?;
        let (a2, pi_pplus) = pplus.central_quotient(&g1_xi)?;

        let mut h2_gens = vec![g1_beta];
        h2_gens.extend(g1_sigma.iter().copied());
        let h2 = FiniteGroup::generate(p8, &h2_gens, cap)?;
        let (pi_h2, pi_h2_proj) = h2.central_quotient(&g1_xi)?;

        let sigma1_cyclic = FiniteGroup::generate(p8, &[g1_sigma[0]], cap)?;
        let (pi_sigma1, _) = sigma1_cyclic.central_quotient(&g1_xi)?;
        let beta_xi = FiniteGroup::generate(p8, &[g1_beta, g1_xi], cap)?;
        let (pi_beta, _) = beta_xi.central_quotient(&g1_xi)?;

        let iota_sigma = Homomorphism::new(
            pi_sigma1.clone(),
            pi_h2.clone(),
            pi_sigma1.gens().to_vec(),
        )?;
        let iota_beta =
            Homomorphism::new(pi_beta.clone(), pi_h2.clone(), pi_beta.gens().to_vec())?;
        let iota_pplus_h2 =
            Homomorphism::new(pplus.clone(), h2.clone(), pplus.gens().to_vec())?;

        Ok(Catalog {
            p: p8,
            d_xi,
            g1_xi,
            g2_xi,
            d_alpha,
            g1_alpha,
            g2_alpha,
            d_beta,
            g1_beta,
            g2_beta,
            g1_sigma,
            g2_sigma,
            pplus,
            a2,
            pi_pplus,
            h2,
            pi_h2,
            pi_h2_proj,
            sigma1_cyclic,
            pi_sigma1,
            beta_xi,
            pi_beta,
            iota_sigma,
            iota_beta,
            iota_pplus_h2,
        })
    }

    /// Builds the two-factor family. `enumerate_pre_h` additionally
    /// enumerates the order-p^{p+4} product group (feasible at p = 3).
    pub fn two_factor(&self, enumerate_pre_h: bool) -> Result<CatalogH> {
        self.two_factor_with_cap(enumerate_pre_h, DEFAULT_CAP)
    }

    pub fn two_factor_with_cap(&self, enumerate_pre_h: bool, cap: usize) -> Result<CatalogH> {
        let p = self.p;
        let mut h_gens = vec![self.d_alpha, self.d_beta, self.d_xi, self.g2_beta];
        h_gens.extend(self.g2_sigma.iter().copied());
        let pre_h = if enumerate_pre_h {
            Some(FiniteGroup::generate(p, &h_gens, cap)?)
        } else {
            None
        };
        let h = FiniteGroup::generate_mod_center(p, &h_gens, &[self.d_xi], cap)?;

        let a3 = FiniteGroup::generate_mod_center(
            p,
            &[self.d_alpha, self.d_beta, self.g2_xi],
            &[self.d_xi],
            cap,
        )?;
        let a3p = FiniteGroup::generate_mod_center(
            p,
            &[self.g1_alpha, self.g2_beta, self.g2_xi],
            &[self.d_xi],
            cap,
        )?;
        let (pi_h, pi_h_proj) = h.central_quotient(&self.g2_xi)?;

        let mut prod_gens = vec![self.g1_alpha, self.g1_beta, self.g2_beta];
        prod_gens.extend(self.g2_sigma.iter().copied());
        let a2_x_pih2 =
            FiniteGroup::generate_mod_center(p, &prod_gens, &[self.g1_xi, self.g2_xi], cap)?;

        let g_up = Homomorphism::new(a3.clone(), h.clone(), a3.gens().to_vec())?;
        let gp_up = Homomorphism::new(a3p.clone(), h.clone(), a3p.gens().to_vec())?;
        let pi_h_iso = Homomorphism::new(
            pi_h.clone(),
            a2_x_pih2.clone(),
            pi_h.gens().to_vec(),
        )?;

        let delta_a2_in_h = FiniteGroup::generate_mod_center(
            p,
            &[self.d_alpha, self.d_beta],
            &[self.d_xi],
            cap,
        )?;

        Ok(CatalogH {
            p,
            pre_h,
            h,
            a3,
            a3p,
            pi_h,
            pi_h_proj,
            a2_x_pih2,
            g_up,
            gp_up,
            pi_h_iso,
            delta_a2_in_h,
        })
    }

    /// phi: A_3 -> A_2 killing Gamma_2(xi).
    pub fn phi(&self, two: &CatalogH) -> Result<Homomorphism> {
        let id = MonomialElement::identity(self.p);
        // gens of a3 are (d_alpha, d_beta, g2_xi)
        Homomorphism::new(
            two.a3.clone(),
            self.a2.clone(),
            vec![self.g1_alpha, self.g1_beta, id],
        )
    }

    /// phi': A_3' -> A_2.
    pub fn phi_prime(&self, two: &CatalogH) -> Result<Homomorphism> {
        let id = MonomialElement::identity(self.p);
        // gens of a3p are (g1_alpha, g2_beta, g2_xi)
        Homomorphism::new(
            two.a3p.clone(),
            self.a2.clone(),
            vec![self.g1_alpha, self.g1_beta, id],
        )
    }

    /// lower g: A_2 -> A_2 x pi(H_2), diagonal on both generators.
    pub fn g_low(&self, two: &CatalogH) -> Result<Homomorphism> {
        Homomorphism::new(
            self.a2.clone(),
            two.a2_x_pih2.clone(),
            vec![self.d_alpha, self.d_beta],
        )
    }

    /// lower g': A_2 -> A_2 x pi(H_2): alpha to the first factor, beta to the
    /// second.
    pub fn gp_low(&self, two: &CatalogH) -> Result<Homomorphism> {
        Homomorphism::new(
            self.a2.clone(),
            two.a2_x_pih2.clone(),
            vec![self.g1_alpha, self.g2_beta],
        )
    }

    /// The abelianization map pi(H_2) -> A_2 sending pi(sigma_1) to
    /// pi(alpha) and pi(beta) to pi(beta).
    pub fn ab_pi_h2(&self) -> Result<Homomorphism> {
        // pi_h2 inherits gens (beta, sigma_1, ..., sigma_p); sigma_k maps to
        // the same place as sigma_1 (they are conjugate via beta).
        let mut images = vec![self.g1_beta];
        for _ in 0..self.p {
            images.push(self.g1_alpha);
        }
        Homomorphism::new(self.pi_h2.clone(), self.a2.clone(), images)
    }

    /// Squares away the largest prime usable for full two-factor pipelines.
    pub fn max_full_prime() -> u32 {
        5
    }
}

pub fn odd_prime_checked(p: u32) -> Result<u8> {
    fp::check_odd_prime(p, 7)?;
    Ok(p as u8)
}
