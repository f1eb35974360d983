//! Command implementations. Each returns the stdout payload or a
//! [`CliError`] carrying the exit code contract: 0 success, 1 verification
//! mismatch, 2 parse error, 3 resource bound.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use repdim_core::dixon::{character_table, table_from_json, table_to_json, verify_table};
use repdim_core::faithful::{
    delta_irr, delta_naive, delta_with_table, kernel_classes, DeltaResult, FaithfulError,
};
use repdim_core::finfield::prime_power;
use repdim_core::formulas::{predict, Family, Prediction};
use repdim_core::group::{
    abelian_rank, build_group, center, derived_subgroup, is_cyclic_subgroup, Group, GroupError,
};
use repdim_core::groupspec::GroupSpec;
use repdim_core::CharacterTable;

use crate::cache::{CacheError, TableCache};

#[derive(Debug)]
pub enum CliError {
    /// Spec or input could not be parsed (exit 2).
    Parse(String),
    /// A resource bound was exceeded (exit 3).
    Bound(String),
    /// A verification or integrity check failed (exit 1).
    Mismatch(String),
    /// Unexpected internal or I/O failure (exit 1).
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Bound(_) => 3,
            CliError::Mismatch(_) | CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Bound(m)
            | CliError::Mismatch(m)
            | CliError::Failure(m) => m,
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderBound { .. } => CliError::Bound(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<repdim_core::dixon::DixonError> for CliError {
    fn from(e: repdim_core::dixon::DixonError) -> Self {
        match e {
            repdim_core::dixon::DixonError::Verification(_) => CliError::Mismatch(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<FaithfulError> for CliError {
    fn from(e: FaithfulError) -> Self {
        match e {
            FaithfulError::TooManyClasses { .. } | FaithfulError::TooManyTargets { .. } => {
                CliError::Bound(e.to_string())
            }
            FaithfulError::UnfaithfulTable | FaithfulError::TableMismatch { .. } => {
                CliError::Mismatch(e.to_string())
            }
            FaithfulError::Dixon(d) => d.into(),
            FaithfulError::Group(g) => g.into(),
        }
    }
}

impl From<CacheError> for CliError {
    fn from(e: CacheError) -> Self {
        match e {
            CacheError::ChecksumMismatch { .. } => CliError::Mismatch(e.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub bound: usize,
    pub cache: TableCache,
    pub pretty: bool,
    pub gap_zero: bool,
    pub filter: Option<String>,
}

fn parse_spec(text: &str) -> Result<GroupSpec, CliError> {
    text.parse::<GroupSpec>().map_err(|e| CliError::Parse(e.to_string()))
}

/// Builds the group and obtains its table, consulting the cache first. The
/// returned JSON payload is byte-identical whether it came from the cache
/// or a fresh computation.
pub fn load_group_and_table(
    spec: &GroupSpec,
    opts: &Options,
) -> Result<(Group, Arc<CharacterTable>, String), CliError> {
    let canonical = spec.to_string();
    let group = build_group(spec, opts.bound)?;
    if let Some(payload) = opts.cache.load(&canonical)? {
        let table = table_from_json(&payload)?;
        return Ok((group, Arc::new(table), payload));
    }
    let table = character_table(&group)?;
    let payload = table_to_json(table.as_ref());
    opts.cache.store(&canonical, &payload)?;
    Ok((group, table, payload))
}

pub fn cmd_table(spec_text: &str, opts: &Options) -> Result<String, CliError> {
    let spec = parse_spec(spec_text)?;
    let (_, table, payload) = load_group_and_table(&spec, opts)?;
    if opts.pretty {
        Ok(render_pretty(table.as_ref()))
    } else {
        Ok(payload + "\n")
    }
}

pub fn cmd_delta(spec_text: &str, opts: &Options) -> Result<String, CliError> {
    let spec = parse_spec(spec_text)?;
    let (group, table, _) = load_group_and_table(&spec, opts)?;
    let result = delta_with_table(&group, table.as_ref())?;
    Ok(render_delta(&result, table.as_ref()))
}

fn render_delta(result: &DeltaResult, table: &CharacterTable) -> String {
    let mut out = format!("{}\n", result.value);
    let rows: Vec<String> = result
        .witness
        .iter()
        .map(|&r| format!("row {r} (degree {})", table.characters[r].degree))
        .collect();
    let _ = writeln!(out, "witness: {}", rows.join(" + "));
    out
}

pub fn cmd_delta_irr(spec_text: &str, opts: &Options) -> Result<String, CliError> {
    let spec = parse_spec(spec_text)?;
    let (_, table, _) = load_group_and_table(&spec, opts)?;
    Ok(match delta_irr(table.as_ref()) {
        Some(d) => format!("{d}\n"),
        None if opts.gap_zero => "0\n".to_string(),
        None => "does not exist\n".to_string(),
    })
}

pub fn cmd_export(spec_text: &str, target: Option<&Path>, opts: &Options) -> Result<String, CliError> {
    let spec = parse_spec(spec_text)?;
    let (_, _, payload) = load_group_and_table(&spec, opts)?;
    match target {
        Some(path) => {
            std::fs::write(path, payload.as_bytes())
                .map_err(|e| CliError::Failure(format!("cannot write {}: {e}", path.display())))?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(payload + "\n"),
    }
}

pub fn cmd_import(path: &Path, opts: &Options) -> Result<String, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::Failure(format!("cannot read {}: {e}", path.display())))?;
    let table = table_from_json(&raw)?;
    let result = repdim_core::faithful::delta_from_table(&table)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "imported table: spec {}, order {}, {} classes, conductor {}",
        table.spec,
        table.order,
        table.class_count(),
        table.conductor
    );
    let _ = writeln!(out, "orthogonality: ok");
    let _ = writeln!(out, "delta = {}", result.value);
    match delta_irr(&table) {
        Some(d) => {
            let _ = writeln!(out, "delta_irr = {d}");
        }
        None if opts.gap_zero => {
            let _ = writeln!(out, "delta_irr = 0");
        }
        None => {
            let _ = writeln!(out, "delta_irr does not exist");
        }
    }
    Ok(out)
}

/// Structural facts → the closed-form clause that applies, if any.
pub fn applicable_family(spec: &GroupSpec, group: &Group) -> Option<Family> {
    match spec {
        GroupSpec::Frobenius72 => return Some(Family::Frobenius72),
        GroupSpec::FrobeniusAffine { q, d } => {
            if *d == 1 {
                return Some(Family::FrobeniusFullAffine { q: *q });
            }
            if *d == 2 && group.order() % 2 == 1 {
                let (_, n) = prime_power(*q).ok()?;
                return Some(Family::FrobeniusOddHalf { q: *q, kernel_rank: n as usize });
            }
        }
        GroupSpec::Extraspecial { p, order, .. } => {
            let mut r = 0u32;
            let mut rest = *order;
            while rest % (p * p) == 0 {
                rest /= p * p;
                r += 1;
            }
            return Some(Family::Extraspecial { p: *p, r });
        }
        GroupSpec::Symmetric(n) if *n >= 5 => return Some(Family::Symmetric { n: *n }),
        GroupSpec::Alternating(n) if *n >= 6 => return Some(Family::Alternating { n: *n }),
        _ => {}
    }
    if group.is_abelian() {
        return Some(Family::Abelian { rank: abelian_rank(group).ok()? });
    }
    let order = group.order() as u64;
    if let Some((p, k)) = single_prime_power(order) {
        let z = center(group);
        let center_cyclic = is_cyclic_subgroup(group, &z.members);
        match k {
            3 => return Some(Family::NonabelianP3 { p }),
            4 => return Some(Family::NonabelianP4 { p, center_cyclic }),
            _ => {}
        }
        if center_cyclic && derived_subgroup(group).order() as u64 == p {
            return Some(Family::CyclicCenterDerivedP {
                index_over_center: order / z.order() as u64,
            });
        }
    }
    if let GroupSpec::Product(a, b) = spec {
        return coprime_product_family(a, b, group.order());
    }
    None
}

fn single_prime_power(order: u64) -> Option<(u64, u32)> {
    prime_power(order).ok()
}

/// Both factors of coprime order, each with a faithful irreducible
/// realizing its representation dimension.
fn coprime_product_family(a: &GroupSpec, b: &GroupSpec, bound: usize) -> Option<Family> {
    let ga = build_group(a, bound).ok()?;
    let gb = build_group(b, bound).ok()?;
    if num_gcd(ga.order() as u64, gb.order() as u64) != 1 {
        return None;
    }
    let factor_delta_irr = |g: &Group| -> Option<u64> {
        let table = character_table(g).ok()?;
        let di = delta_irr(table.as_ref())?;
        let d = delta_with_table(g, table.as_ref()).ok()?;
        (d.value == di).then_some(di)
    };
    Some(Family::CoprimeProduct {
        left_delta_irr: factor_delta_irr(&ga)?,
        right_delta_irr: factor_delta_irr(&gb)?,
    })
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

/// Runs exact orthogonality, the oracle equivalence (when the naive search
/// is in range), and the closed-form prediction when a clause applies.
/// Any mismatch is a diff report with exit code 1.
pub fn cmd_verify(spec_text: &str, opts: &Options) -> Result<String, CliError> {
    let spec = parse_spec(spec_text)?;
    let (group, table, payload) = load_group_and_table(&spec, opts)?;
    let mut out = String::new();
    let mut mismatches: Vec<String> = Vec::new();
    let _ = writeln!(out, "verify {}", spec);

    match verify_table(table.as_ref()) {
        Ok(()) => {
            let _ = writeln!(out, "  orthogonality (rows and columns, exact): ok");
        }
        Err(e) => mismatches.push(format!("orthogonality: {e}")),
    }
    let sq: u64 = table.characters.iter().map(|r| r.degree * r.degree).sum();
    if sq == table.order {
        let _ = writeln!(out, "  sum of squared degrees = order = {}: ok", table.order);
    } else {
        mismatches.push(format!("sum of squared degrees {sq} != order {}", table.order));
    }

    let result = delta_with_table(&group, table.as_ref())?;
    let irr = delta_irr(table.as_ref());
    let _ = writeln!(out, "  delta = {}", result.value);
    match irr {
        Some(d) => {
            let _ = writeln!(out, "  delta_irr = {d}");
        }
        None => {
            let _ = writeln!(out, "  delta_irr does not exist");
        }
    }

    if table.class_count() <= 12 {
        let naive = delta_naive(table.as_ref())?;
        if naive == result.value {
            let _ = writeln!(out, "  naive subset search agrees: {naive}");
        } else {
            mismatches.push(format!(
                "naive subset search gives {naive}, cover solver gives {}",
                result.value
            ));
        }
    } else {
        let _ = writeln!(
            out,
            "  naive subset search skipped ({} classes > 12)",
            table.class_count()
        );
    }

    match applicable_family(&spec, &group).and_then(|f| predict(&f).map(|p| (f, p))) {
        Some((family, Prediction { delta: pd, delta_irr: pdi, source })) => {
            if pd == result.value && pdi == irr {
                let _ = writeln!(out, "  prediction [{source}] matches: delta {pd}");
            } else {
                mismatches.push(format!(
                    "prediction [{source}] ({family:?}): predicted delta {pd}, delta_irr {pdi:?}; computed {} and {irr:?}",
                    result.value
                ));
            }
        }
        None => {
            let _ = writeln!(out, "  no closed-form clause applies");
        }
    }

    // Round trip through JSON must preserve the delta computation.
    let reimported = table_from_json(&payload)?;
    let via_table = repdim_core::faithful::delta_from_table(&reimported)?;
    if via_table.value == result.value {
        let _ = writeln!(out, "  JSON round trip preserves delta: ok");
    } else {
        mismatches.push(format!(
            "JSON round trip changes delta: {} vs {}",
            via_table.value, result.value
        ));
    }

    if mismatches.is_empty() {
        let _ = writeln!(out, "all checks passed");
        Ok(out)
    } else {
        for m in &mismatches {
            let _ = writeln!(out, "MISMATCH: {m}");
        }
        Err(CliError::Mismatch(out))
    }
}

/// Human-readable table with cyclotomic values in ζ-notation.
fn render_pretty(table: &CharacterTable) -> String {
    let k = table.class_count();
    // Class headers: rep order plus a letter per class of that order.
    let mut labels = Vec::with_capacity(k);
    let mut counts: std::collections::HashMap<u64, u8> = std::collections::HashMap::new();
    for class in &table.classes {
        let n = counts.entry(class.rep_order).or_insert(0);
        labels.push(format!("{}{}", class.rep_order, (b'a' + *n) as char));
        *n += 1;
    }
    let mut value_strs: Vec<Vec<String>> = Vec::with_capacity(k);
    for row in &table.characters {
        value_strs.push(row.values.iter().map(|v| v.to_string()).collect());
    }
    let mut widths: Vec<usize> = labels.iter().map(String::len).collect();
    for (j, w) in widths.iter_mut().enumerate() {
        *w = (*w).max(table.classes[j].size.to_string().len());
        for row in &value_strs {
            *w = (*w).max(row[j].len());
        }
    }
    let name_width = format!("chi_{}", k.saturating_sub(1)).len().max("size".len());
    let mut out = format!(
        "Character table of {}  (order {}, conductor {})\n\n",
        table.spec, table.order, table.conductor
    );
    let pad = |s: &str, w: usize| format!("{s:>w$}");
    let _ = write!(out, "{} |", pad("", name_width));
    for (j, label) in labels.iter().enumerate() {
        let _ = write!(out, " {}", pad(label, widths[j]));
    }
    let _ = write!(out, "\n{} |", pad("size", name_width));
    for (j, class) in table.classes.iter().enumerate() {
        let _ = write!(out, " {}", pad(&class.size.to_string(), widths[j]));
    }
    let total: usize = widths.iter().map(|w| w + 1).sum();
    let _ = write!(out, "\n{}-+{}\n", "-".repeat(name_width), "-".repeat(total));
    for (r, row) in value_strs.iter().enumerate() {
        let _ = write!(out, "{} |", pad(&format!("chi_{r}"), name_width));
        for (j, v) in row.iter().enumerate() {
            let _ = write!(out, " {}", pad(v, widths[j]));
        }
        out.push('\n');
    }
    out
}

/// Faithful kernel sanity used by tests: the masked classes of every row
/// form a normal subgroup; exposed here so the corpus can reuse it.
pub fn witness_is_minimal(table: &CharacterTable, witness: &[usize]) -> bool {
    if witness.len() <= 1 {
        return true;
    }
    let full_inter = |skip: Option<usize>| {
        let mut inter: Option<repdim_core::faithful::KernelMask> = None;
        for (i, &r) in witness.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            let mask = kernel_classes(table, r);
            inter = Some(match inter {
                None => mask,
                Some(mut acc) => {
                    acc.intersect_with(&mask);
                    acc
                }
            });
        }
        inter.expect("witness nonempty")
    };
    if !full_inter(None).is_identity_only() {
        return false;
    }
    (0..witness.len()).all(|i| !full_inter(Some(i)).is_identity_only())
}
