//! Per-instance verification reports.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::{abelianization, group_order, match_presentations_mod_involutions, regular_rep, todd_coxeter, word_holds};
use super::{AbelianInvariants, DEFAULT_MAX_COSETS};
use crate::presentation::{EmbeddingInstance, Family, InstanceParams};
use crate::schreier::{evaluated_kernel_presentation, raw_kernel_of, Transversal};
use crate::tietze::{simplify, SimplifyConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyBudgets {
    pub max_cosets: usize,
    pub simplify: SimplifyConfig,
}

impl Default for VerifyBudgets {
    fn default() -> Self {
        VerifyBudgets { max_cosets: DEFAULT_MAX_COSETS, simplify: SimplifyConfig::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub family: Family,
    pub params: InstanceParams,
}

#[derive(Debug, Clone, Serialize)]
pub struct EvaluatedCheck {
    pub generators: usize,
    pub relator_nf_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RawCheck {
    pub generators_after_simplify: usize,
    pub matched: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteChecks {
    pub ambient_order: usize,
    pub kernel_order: Option<usize>,
    pub index: Option<usize>,
    pub product_ok: bool,
    pub relators_hold: bool,
}

/// Order/index checks, or `Skipped` when the ambient group did not enumerate
/// within budget.
#[derive(Debug, Clone)]
pub enum Finite {
    Checked(FiniteChecks),
    Skipped,
}

impl Serialize for Finite {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite::Checked(c) => c.serialize(s),
            Finite::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub instance: InstanceInfo,
    pub hom_valid: bool,
    pub image_rank: usize,
    pub transversal_size: usize,
    pub evaluated: EvaluatedCheck,
    pub raw: RawCheck,
    pub finite: Finite,
    pub split_section: bool,
    pub verdict: Verdict,
    /// Abelianizations of the expected kernel, the evaluated kernel and the
    /// simplified raw kernel. Text output only.
    #[serde(skip)]
    pub abelian: [AbelianInvariants<BigInt>; 3],
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "ok" } else { "FAILED" };
        let mut out = String::new();
        out.push_str(&format!("instance        {}\n", self.instance.family));
        out.push_str(&format!("hom valid       {}\n", yes(self.hom_valid)));
        out.push_str(&format!("image rank      {}\n", self.image_rank));
        out.push_str(&format!("transversal     {}\n", self.transversal_size));
        out.push_str(&format!(
            "evaluated       {} generators, relators {}\n",
            self.evaluated.generators,
            yes(self.evaluated.relator_nf_match)
        ));
        out.push_str(&format!(
            "raw+simplify    {} generators, match {}\n",
            self.raw.generators_after_simplify,
            yes(self.raw.matched)
        ));
        match &self.finite {
            Finite::Skipped => out.push_str("finite checks   skipped (coset budget exceeded)\n"),
            Finite::Checked(c) => {
                let show = |v: Option<usize>| v.map_or("?".to_string(), |x| x.to_string());
                out.push_str(&format!(
                    "finite checks   |ambient| = {}, |kernel| = {}, index = {}, product {}, relators {}\n",
                    c.ambient_order,
                    show(c.kernel_order),
                    show(c.index),
                    yes(c.product_ok),
                    yes(c.relators_hold)
                ));
            }
        }
        out.push_str(&format!("split section   {}\n", yes(self.split_section)));
        out.push_str(&format!(
            "abelianization  expected {}, evaluated {}, raw {}\n",
            self.abelian[0], self.abelian[1], self.abelian[2]
        ));
        out.push_str(&format!("verdict         {}\n", if self.passed() { "pass" } else { "fail" }));
        out
    }
}

/// Runs every check on an instance; failures become report entries.
pub fn verify_instance(inst: &EmbeddingInstance, budgets: &VerifyBudgets) -> VerifyReport {
    let n = inst.rank();
    let hom_valid = inst.hom.check(&inst.ambient).unwrap_or(false);
    let image_rank = inst.hom.image_rank();
    let transversal_size = Transversal::build(&inst.ambient, &inst.hom, &inst.transversal_gens).map_or(0, |t| t.len());
    let expected_ab = abelianization::<BigInt>(&inst.expected_kernel);

    let (evaluated, evaluated_ab) = match evaluated_kernel_presentation(inst) {
        Ok(k) => (
            EvaluatedCheck {
                generators: k.presentation.rank(),
                relator_nf_match: k.presentation.rank() == inst.expected_kernel.rank()
                    && k.presentation.generators() == inst.expected_kernel.generators()
                    && k.presentation.relator_nf_set() == inst.expected_kernel.relator_nf_set(),
            },
            abelianization::<BigInt>(&k.presentation),
        ),
        Err(_) => (EvaluatedCheck { generators: 0, relator_nf_match: false }, expected_ab.clone()),
    };

    let (raw, raw_ab) = match raw_kernel_of(inst) {
        Ok(k) => {
            let (simplified, _) = simplify(&k.presentation, &budgets.simplify);
            let (expected, _) = simplify(&inst.expected_kernel, &budgets.simplify);
            let matched = matches!(match_presentations_mod_involutions(&simplified, &expected), Ok(Some(_)));
            (
                RawCheck { generators_after_simplify: simplified.rank(), matched },
                abelianization::<BigInt>(&simplified),
            )
        }
        Err(_) => (RawCheck { generators_after_simplify: 0, matched: false }, expected_ab.clone()),
    };

    let finite = finite_checks(inst, budgets.max_cosets);

    let split_section = {
        let units = inst.transversal_gens.len() == n
            && inst.transversal_gens.iter().enumerate().all(|(i, &g)| inst.hom.image(g).ok() == Some(1 << i));
        let on_r = inst.ambient.relators().iter().filter(|r| r.letters().iter().all(|l| inst.transversal_gens.contains(&l.index())));
        let rels_ok = on_r.map(|r| inst.hom.word_image(r)).all(|v| v == Ok(0));
        units && rels_ok
    };

    let finite_ok = match &finite {
        Finite::Skipped => true,
        Finite::Checked(c) => c.product_ok && c.relators_hold && c.index == Some(1 << n),
    };
    let all = hom_valid
        && image_rank == n
        && transversal_size == 1 << n
        && evaluated.relator_nf_match
        && raw.matched
        && finite_ok
        && split_section;

    VerifyReport {
        instance: InstanceInfo { family: inst.family, params: inst.params.clone() },
        hom_valid,
        image_rank,
        transversal_size,
        evaluated,
        raw,
        finite,
        split_section,
        verdict: if all { Verdict::Pass } else { Verdict::Fail },
        abelian: [expected_ab, evaluated_ab, raw_ab],
    }
}

fn finite_checks(inst: &EmbeddingInstance, budget: usize) -> Finite {
    let Ok(table) = todd_coxeter(&inst.ambient, &[], budget) else { return Finite::Skipped };
    let Some(ambient_order) = table.index() else { return Finite::Skipped };
    let kernel_order = group_order(&inst.expected_kernel, budget);
    let index = todd_coxeter(&inst.ambient, &inst.expected_words, budget).ok().and_then(|t| t.index());
    let product_ok = kernel_order.is_some_and(|k| ambient_order == (1usize << inst.rank()) * k);
    let relators_hold = regular_rep(&table).is_ok_and(|rep| {
        inst.expected_kernel.relators().iter().all(|r| {
            let expanded = r.substitute(|g| inst.expected_words[g].clone());
            word_holds(&rep, &expanded).unwrap_or(false)
        })
    });
    Finite::Checked(FiniteChecks { ambient_order, kernel_order, index, product_ok, relators_hold })
}
