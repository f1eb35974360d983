//! The acceptance corpus: every numeric claim the tool is expected to
//! reproduce, plus the cross-cutting property suite. The `corpus` command
//! and the acceptance test target both run through these entries.

use std::fmt::Write as _;

use repdim_core::dixon::{character_table, table_from_json, table_to_json, verify_table};
use repdim_core::faithful::{
    delta_from_table, delta_irr, delta_naive, delta_with_table, DeltaResult,
};
use repdim_core::group::{build_group, Group};
use repdim_core::groupspec::GroupSpec;

use crate::cache::{CacheMode, TableCache};
use crate::commands::witness_is_minimal;

pub const ORDER_BOUND: usize = 10_000;

/// Everything the property suite ranges over: the groups of criteria 1–14.
pub const CORPUS_SPECS: &[&str] = &[
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "cyclic(5)",
    "cyclic(6)",
    "cyclic(7)",
    "cyclic(8)",
    "cyclic(9)",
    "cyclic(10)",
    "cyclic(11)",
    "cyclic(12)",
    "abelian(2,2)",
    "abelian(2,4,8)",
    "abelian(6,10)",
    "dihedral(6)",
    "dihedral(8)",
    "dihedral(10)",
    "dihedral(12)",
    "dicyclic(8)",
    "alternating(4)",
    "alternating(5)",
    "alternating(6)",
    "alternating(7)",
    "symmetric(5)",
    "symmetric(6)",
    "extraspecial(3,27,exp3)",
    "extraspecial(3,27,exp9)",
    "extraspecial(2,32,plus)",
    "extraspecial(2,32,minus)",
    "product(dihedral(8),cyclic(2))",
    "product(alternating(4),dihedral(10))",
    "product(alternating(4),dihedral(20))",
    "product(alternating(4),symmetric(3))",
    "frobenius_affine(5,1)",
    "frobenius_affine(7,2)",
    "frobenius_affine(9,1)",
    "frobenius72()",
    "gl(2,3)",
    "sl(2,5)",
    "product(frobenius_affine(7,2),dicyclic(8))",
    "product(extraspecial(3,27,exp3),dicyclic(8))",
];

/// Product corpus members as (left, right, product) spec triples.
const PRODUCT_TRIPLES: &[(&str, &str, &str)] = &[
    ("dihedral(8)", "cyclic(2)", "product(dihedral(8),cyclic(2))"),
    ("alternating(4)", "dihedral(10)", "product(alternating(4),dihedral(10))"),
    ("alternating(4)", "dihedral(20)", "product(alternating(4),dihedral(20))"),
    ("alternating(4)", "symmetric(3)", "product(alternating(4),symmetric(3))"),
    (
        "frobenius_affine(7,2)",
        "dicyclic(8)",
        "product(frobenius_affine(7,2),dicyclic(8))",
    ),
    (
        "extraspecial(3,27,exp3)",
        "dicyclic(8)",
        "product(extraspecial(3,27,exp3),dicyclic(8))",
    ),
];

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub label: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub struct Criterion {
    pub id: usize,
    pub label: &'static str,
    run: fn() -> Result<String, String>,
}

fn group(spec: &str) -> Result<Group, String> {
    let parsed: GroupSpec = spec.parse().map_err(|e| format!("{spec}: {e}"))?;
    build_group(&parsed, ORDER_BOUND).map_err(|e| format!("{spec}: {e}"))
}

fn compute(spec: &str) -> Result<(Group, DeltaResult, Option<u64>), String> {
    let g = group(spec)?;
    let table = character_table(&g).map_err(|e| format!("{spec}: {e}"))?;
    let res = delta_with_table(&g, table.as_ref()).map_err(|e| format!("{spec}: {e}"))?;
    let irr = delta_irr(table.as_ref());
    Ok((g, res, irr))
}

fn expect_delta(spec: &str, want: u64, log: &mut String) -> Result<(), String> {
    let (_, res, _) = compute(spec)?;
    if res.value != want {
        return Err(format!("delta({spec}) = {}, expected {want}", res.value));
    }
    let _ = writeln!(log, "    delta({spec}) = {want}");
    Ok(())
}

fn expect_both(spec: &str, want: u64, want_irr: Option<u64>, log: &mut String) -> Result<(), String> {
    let (_, res, irr) = compute(spec)?;
    if res.value != want {
        return Err(format!(
            "delta({spec}) = {} (witness rows {:?}), expected {want}",
            res.value, res.witness
        ));
    }
    if irr != want_irr {
        return Err(format!("delta_irr({spec}) = {irr:?}, expected {want_irr:?}"));
    }
    let rendered = match want_irr {
        Some(d) => format!("{d}"),
        None => "does not exist".into(),
    };
    let _ = writeln!(log, "    delta({spec}) = {want}, delta_irr = {rendered}");
    Ok(())
}

fn c01_cyclic() -> Result<String, String> {
    let mut log = String::new();
    for n in 1..=12u64 {
        expect_both(&format!("cyclic({n})"), 1, Some(1), &mut log)?;
    }
    Ok(log)
}

fn c02_klein() -> Result<String, String> {
    let mut log = String::new();
    expect_both("abelian(2,2)", 2, None, &mut log)?;
    Ok(log)
}

fn c03_abelian_rank() -> Result<String, String> {
    let mut log = String::new();
    expect_delta("abelian(2,4,8)", 3, &mut log)?;
    expect_delta("abelian(6,10)", 2, &mut log)?;
    Ok(log)
}

fn c04_dihedral_quaternion() -> Result<String, String> {
    let mut log = String::new();
    for spec in ["dihedral(6)", "dihedral(8)", "dihedral(10)", "dihedral(12)", "dicyclic(8)"] {
        expect_delta(spec, 2, &mut log)?;
    }
    Ok(log)
}

fn c05_alternating() -> Result<String, String> {
    let mut log = String::new();
    for (n, want) in [(4u32, 3u64), (5, 3), (6, 5), (7, 6)] {
        expect_delta(&format!("alternating({n})"), want, &mut log)?;
    }
    Ok(log)
}

fn c06_symmetric() -> Result<String, String> {
    let mut log = String::new();
    expect_delta("symmetric(5)", 4, &mut log)?;
    expect_delta("symmetric(6)", 5, &mut log)?;
    Ok(log)
}

fn c07_extraspecial() -> Result<String, String> {
    let mut log = String::new();
    expect_both("extraspecial(3,27,exp3)", 3, Some(3), &mut log)?;
    expect_both("extraspecial(3,27,exp9)", 3, Some(3), &mut log)?;
    // The two order-27 groups are isoclinic; their deltas agree.
    let (_, a, _) = compute("extraspecial(3,27,exp3)")?;
    let (_, b, _) = compute("extraspecial(3,27,exp9)")?;
    if a.value != b.value {
        return Err("isoclinic order-27 pair disagrees".into());
    }
    let _ = writeln!(log, "    isoclinic order-27 pair agrees: {}", a.value);
    expect_both("extraspecial(2,32,plus)", 4, Some(4), &mut log)?;
    expect_both("extraspecial(2,32,minus)", 4, Some(4), &mut log)?;
    Ok(log)
}

fn c08_order16_noncyclic_center() -> Result<String, String> {
    let mut log = String::new();
    expect_both("product(dihedral(8),cyclic(2))", 3, None, &mut log)?;
    Ok(log)
}

fn c09_products_a4() -> Result<String, String> {
    let mut log = String::new();
    expect_both("product(alternating(4),dihedral(10))", 5, Some(6), &mut log)?;
    expect_delta("product(alternating(4),dihedral(20))", 5, &mut log)?;
    expect_both("product(alternating(4),symmetric(3))", 5, Some(6), &mut log)?;
    Ok(log)
}

fn c10_frobenius_affine() -> Result<String, String> {
    let mut log = String::new();
    expect_both("frobenius_affine(5,1)", 4, Some(4), &mut log)?;
    expect_both("frobenius_affine(7,2)", 3, Some(3), &mut log)?;
    expect_both("frobenius_affine(9,1)", 8, Some(8), &mut log)?;
    Ok(log)
}

fn c11_frobenius72() -> Result<String, String> {
    let mut log = String::new();
    expect_both("frobenius72()", 8, Some(8), &mut log)?;
    Ok(log)
}

fn c12_linear_groups() -> Result<String, String> {
    let mut log = String::new();
    expect_delta("gl(2,3)", 2, &mut log)?;
    expect_delta("sl(2,5)", 2, &mut log)?;
    Ok(log)
}

fn c13_coprime_product() -> Result<String, String> {
    let mut log = String::new();
    expect_both("product(frobenius_affine(7,2),dicyclic(8))", 6, Some(6), &mut log)?;
    Ok(log)
}

fn c14_nilpotent_cyclic_center() -> Result<String, String> {
    let mut log = String::new();
    expect_both("product(extraspecial(3,27,exp3),dicyclic(8))", 6, Some(6), &mut log)?;
    Ok(log)
}

fn c15_property_suite() -> Result<String, String> {
    let mut log = String::new();
    let mut naive_checked = 0;
    for spec in CORPUS_SPECS {
        let g = group(spec)?;
        let table = character_table(&g).map_err(|e| format!("{spec}: {e}"))?;
        // Exact row/column orthogonality and degree bookkeeping.
        verify_table(table.as_ref()).map_err(|e| format!("{spec}: {e}"))?;
        let sq: u64 = table.characters.iter().map(|r| r.degree * r.degree).sum();
        if sq != g.order() as u64 {
            return Err(format!("{spec}: sum of squared degrees {sq} != {}", g.order()));
        }
        let res = delta_with_table(&g, table.as_ref()).map_err(|e| format!("{spec}: {e}"))?;
        let irr = delta_irr(table.as_ref());
        // delta <= delta_irr whenever the latter exists.
        if let Some(d) = irr {
            if res.value > d {
                return Err(format!("{spec}: delta {} > delta_irr {d}", res.value));
            }
        }
        // delta = 1 iff cyclic.
        let cyclic = spec.starts_with("cyclic(");
        if (res.value == 1) != cyclic {
            return Err(format!("{spec}: delta = 1 must characterize cyclic groups"));
        }
        // Oracle equivalence on narrow tables.
        if table.class_count() <= 12 {
            let naive = delta_naive(table.as_ref()).map_err(|e| format!("{spec}: {e}"))?;
            if naive != res.value {
                return Err(format!(
                    "{spec}: naive search {naive} != cover optimum {}",
                    res.value
                ));
            }
            naive_checked += 1;
        }
        // Witness minimality.
        if !witness_is_minimal(table.as_ref(), &res.witness) {
            return Err(format!("{spec}: witness is not minimal"));
        }
        // JSON round trip: identical delta from the re-imported table.
        let payload = table_to_json(table.as_ref());
        let back = table_from_json(&payload).map_err(|e| format!("{spec}: {e}"))?;
        let again = delta_from_table(&back).map_err(|e| format!("{spec}: {e}"))?;
        if again.value != res.value {
            return Err(format!(
                "{spec}: delta changes across JSON round trip ({} vs {})",
                again.value, res.value
            ));
        }
    }
    let _ = writeln!(
        log,
        "    orthogonality, degree sums, witness minimality, round trips: {} groups",
        CORPUS_SPECS.len()
    );
    let _ = writeln!(log, "    naive-vs-cover oracle equivalence: {naive_checked} groups");

    // Subadditivity over the corpus products.
    for (a, b, ab) in PRODUCT_TRIPLES {
        let (_, ra, _) = compute(a)?;
        let (_, rb, _) = compute(b)?;
        let (_, rab, _) = compute(ab)?;
        if rab.value > ra.value + rb.value {
            return Err(format!(
                "{ab}: delta {} exceeds {} + {}",
                rab.value, ra.value, rb.value
            ));
        }
    }
    let _ = writeln!(log, "    delta(AxB) <= delta(A) + delta(B): {} products", PRODUCT_TRIPLES.len());

    // Cache determinism: two cold computations, byte-identical payloads.
    let dir = scratch_dir("repdim-corpus-cache");
    let cache = TableCache::new(CacheMode::ReadWrite, dir.clone());
    let probe: GroupSpec = "product(alternating(4),dihedral(10))".parse().unwrap();
    let ga = build_group(&probe, ORDER_BOUND).map_err(|e| e.to_string())?;
    let cold_a = table_to_json(&repdim_core::dixon::compute_character_table::<i64>(&ga).unwrap());
    let cold_b = table_to_json(&repdim_core::dixon::compute_character_table::<i64>(&ga).unwrap());
    cache.store(&probe.to_string(), &cold_a).map_err(|e| e.to_string())?;
    let loaded = cache
        .load(&probe.to_string())
        .map_err(|e| e.to_string())?
        .ok_or("cache entry vanished")?;
    let _ = std::fs::remove_dir_all(&dir);
    if cold_a != cold_b {
        return Err("two cold computations differ".into());
    }
    if loaded != cold_a {
        return Err("cached payload differs from the computation".into());
    }
    let _ = writeln!(log, "    cache determinism: byte-identical payloads");
    Ok(log)
}

fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!(
        "{tag}-{}-{}",
        std::process::id(),
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0)
    ));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, label: "cyclic groups: delta = delta_irr = 1", run: c01_cyclic },
        Criterion { id: 2, label: "Klein group: delta = 2, no faithful irreducible", run: c02_klein },
        Criterion { id: 3, label: "abelian groups: delta = rank", run: c03_abelian_rank },
        Criterion { id: 4, label: "dihedral and quaternion: delta = 2", run: c04_dihedral_quaternion },
        Criterion { id: 5, label: "alternating groups", run: c05_alternating },
        Criterion { id: 6, label: "symmetric groups: delta = n - 1", run: c06_symmetric },
        Criterion { id: 7, label: "extraspecial 27 and 32", run: c07_extraspecial },
        Criterion { id: 8, label: "order-16 product, noncyclic center: delta = 3", run: c08_order16_noncyclic_center },
        Criterion { id: 9, label: "A4 x D10 / A4 x S3: delta 5, delta_irr 6", run: c09_products_a4 },
        Criterion { id: 10, label: "affine Frobenius groups", run: c10_frobenius_affine },
        Criterion { id: 11, label: "Frobenius group of order 72: delta = 8", run: c11_frobenius72 },
        Criterion { id: 12, label: "GL(2,3) and SL(2,5): delta = 2", run: c12_linear_groups },
        Criterion { id: 13, label: "coprime product: delta = 3 * 2", run: c13_coprime_product },
        Criterion { id: 14, label: "nilpotent with cyclic center: delta = 6", run: c14_nilpotent_cyclic_center },
        Criterion { id: 15, label: "property suite", run: c15_property_suite },
    ]
}

pub fn run_criterion(criterion: &Criterion) -> CriterionOutcome {
    match (criterion.run)() {
        Ok(detail) => CriterionOutcome {
            id: criterion.id,
            label: criterion.label,
            pass: true,
            detail,
        },
        Err(msg) => CriterionOutcome {
            id: criterion.id,
            label: criterion.label,
            pass: false,
            detail: format!("    {msg}\n"),
        },
    }
}

/// Runs the corpus (optionally filtered by substring match on the label)
/// and renders the pass/fail matrix.
pub fn run_corpus(filter: Option<&str>, verbose: bool) -> (String, bool) {
    let mut out = String::new();
    let mut all_pass = true;
    let mut ran = 0;
    let filter_lower = filter.map(str::to_lowercase);
    for criterion in criteria() {
        if let Some(f) = &filter_lower {
            if !criterion.label.to_lowercase().contains(f) {
                continue;
            }
        }
        ran += 1;
        let outcome = run_criterion(&criterion);
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} criterion {:>2}: {}", outcome.id, outcome.label);
        if verbose || !outcome.pass {
            out.push_str(&outcome.detail);
        }
        all_pass &= outcome.pass;
    }
    if ran == 0 {
        let _ = writeln!(out, "no criteria match the filter");
        all_pass = false;
    }
    (out, all_pass)
}
