//! Built-in fixture suite.

use curvres_core::dual::{epd_pipeline, equivariant_dual, Budget, Exp, MonomialOrder, Poly, TorusWeight, WeightedIdeal};
use curvres_core::residue::localization::{ab_sum, flag_residue_form};
use curvres_core::{
    iterated_residue, k1_oracle, tautological_integral, ChernMonomial, Error, ExactRational, IntegrandSpec, Monomial,
    MultiPoly, ResidueForm, SymbolId,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{document, Outcome, OutputFormat, FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestDocument {
    pub format_version: u32,
    pub rows: Vec<Row>,
}

type QTable<'a> = &'a dyn Fn(usize) -> Result<MultiPoly, Error>;

fn row(name: &str, check: impl FnOnce() -> Result<(), String>) -> Row {
    let res = check();
    Row { name: name.into(), passed: res.is_ok(), detail: res.err().unwrap_or_default() }
}

fn orientation() -> Result<(), String> {
    for k in 1..=5 {
        let f = ResidueForm::monomial_denominator(MultiPoly::one(), &vec![1; k]).map_err(|e| e.to_string())?;
        let got = iterated_residue(&f).map_err(|e| e.to_string())?;
        let want = MultiPoly::from(if k % 2 == 0 { 1 } else { -1 });
        if got != want {
            return Err(format!("k = {k}: {got}"));
        }
    }
    Ok(())
}

fn qk_table(table: QTable) -> Result<(), String> {
    for k in 2..=4 {
        let (mdeg, _) = epd_pipeline(k, Budget::default()).map_err(|e| e.to_string())?;
        let q = table(k).map_err(|e| e.to_string())?;
        if mdeg != q {
            return Err(format!("k = {k}: computed {mdeg}, table {q}"));
        }
    }
    Ok(())
}

fn toric() -> Result<(), String> {
    let order = MonomialOrder::GrevLex;
    let e = |v: [u16; 4]| -> Exp { v.into_iter().collect() };
    let f = Poly::from_terms(
        [(e([1, 0, 1, 0]), ExactRational::ONE), (e([0, 1, 0, 1]), -ExactRational::ONE)],
        order,
    );
    let weights = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 1]].map(|w| TorusWeight::new(w.to_vec())).to_vec();
    let ideal = WeightedIdeal::new(vec![f], weights, WeightedIdeal::default_names(4)).map_err(|e| e.to_string())?;
    let d = equivariant_dual(&ideal, order, Budget::default()).map_err(|e| e.to_string())?;
    let want: MultiPoly = "z1 + z3".parse().map_err(|e: Error| e.to_string())?;
    if d != want {
        return Err(format!("got {d}"));
    }
    Ok(())
}

fn localisation() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=n);
        let mut e = vec![0u32; k];
        for _ in 0..rng.gen_range(0..=n) {
            e[rng.gen_range(0..k)] += 1;
        }
        let q = MultiPoly::term(
            Monomial::from_pairs((0..k).filter(|&i| e[i] > 0).map(|i| (SymbolId::z(i + 1), e[i]))),
            ExactRational::ONE,
        );
        let (num, den) = ab_sum(&q, n, k).map_err(|e| e.to_string())?;
        let form = flag_residue_form(&q, n, k).map_err(|e| e.to_string())?;
        let res = iterated_residue(&form).map_err(|e| e.to_string())?;
        if num != res.mul(&den) {
            return Err(format!("n = {n}, k = {k}, Q = {q}"));
        }
    }
    Ok(())
}

fn two_points() -> Result<(), String> {
    let m = ChernMonomial::new([(1, 3)]).map_err(|e| e.to_string())?;
    let spec = IntegrandSpec::new(2, 1, 1, m.clone(), false).map_err(|e| e.to_string())?;
    let a = tautological_integral(&spec).map_err(|e| e.to_string())?;
    let b = k1_oracle(2, 1, &m).map_err(|e| e.to_string())?;
    if a != b {
        return Err(format!("residue {} vs oracle {}", a.poly(), b.poly()));
    }
    Ok(())
}

/// Runs every fixture against the given `Q_k` table.
pub fn run(table: QTable) -> Vec<Row> {
    vec![
        row("orientation", orientation),
        row("qk table", || qk_table(table)),
        row("toric epd", toric),
        row("localisation identity", localisation),
        row("k=1 oracle", two_points),
    ]
}

pub fn render(rows: &[Row], format: OutputFormat) -> Outcome {
    let code = if rows.iter().all(|r| r.passed) { 0 } else { 1 };
    let output = match format {
        OutputFormat::Json => document::to_json(&SelftestDocument { format_version: FORMAT_VERSION, rows: rows.to_vec() }),
        OutputFormat::Text => rows
            .iter()
            .map(|r| {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                if r.detail.is_empty() {
                    format!("{mark}  {}\n", r.name)
                } else {
                    format!("{mark}  {}  ({})\n", r.name, r.detail)
                }
            })
            .collect(),
    };
    Outcome { code, output }
}
