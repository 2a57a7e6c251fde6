use std::io::Write;

use num_complex::Complex64;

use redheffer::reference::{reference_eigen, reference_vnk, EIGEN_TOLERANCE};
use redheffer::{
    build_a, det_exact, det_from_vnk, det_weighted, floor_log2, read_cache, spectrum, vnk_fast,
    vnk_naive_row, write_cache, ShiftedCharPoly, Variant, VnkTable, CHARPOLY_CAP, NAIVE_CAP,
};

use crate::args::{Format, MatrixKind, Table};
use crate::config::{CoeffSpec, RunConfig, WeightSpec, Weights};
use crate::output::{complex_text, Field, Records};
use crate::CliError;

/// Above this the coefficient-sum determinant is refused, except for `C`,
/// which goes through `v(n, k)`.
pub const DET_FORMULA_CAP: u64 = 10_000_000;

/// Eigenvalue-table rows up to this `n` run with `--extended`.
const EXTENDED_EIGEN_MAX: u64 = 1 << 32;

pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

/// The unit-case table for `n`, through the cache when one is configured.
fn load_table(n: u64, cfg: &RunConfig, err: &mut dyn Write) -> Result<VnkTable, CliError> {
    let Some(dir) = &cfg.cache_dir else {
        return Ok(vnk_fast(n));
    };
    if let Some(table) = read_cache(dir, n)? {
        writeln!(err, "cache hit: {}", redheffer::vnk::cache_path(dir, n).display())?;
        return Ok(table);
    }
    let table = vnk_fast(n);
    let path = write_cache(dir, &table)?;
    writeln!(err, "cache stored: {}", path.display())?;
    Ok(table)
}

pub fn vnk(cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    let n = cfg.require_n()?;
    let r = floor_log2(n);
    let ks: Vec<u32> = match cfg.k {
        Some(k) => vec![k],
        None => (1..=r).collect(),
    };

    let values: Vec<Field> = if cfg.is_unit() {
        let table = load_table(n, cfg, io.err)?;
        ks.iter()
            .map(|&k| Field::Int(table.get(n, k).expect("n is a floor value of itself").into()))
            .collect()
    } else {
        if n > NAIVE_CAP {
            return Err(CliError::invalid(format!(
                "non-unit weights or coefficients use the definition-based sums, capped at n = {NAIVE_CAP}; \
                 only unit weights and coefficients have the fast path"
            )));
        }
        let size = n as usize;
        let a = cfg.coefficients(size)?;
        let at = |k: u32| k as usize;
        match cfg.weight_vector(size)? {
            Weights::Exact(w) => {
                let row = vnk_naive_row(&a, &w, size)?;
                ks.iter()
                    .map(|&k| Field::Int(row.get(at(k)).cloned().unwrap_or_default()))
                    .collect()
            }
            Weights::Complex(w) => {
                let row = vnk_naive_row::<Complex64>(&a, &w, size)?;
                ks.iter()
                    .map(|&k| Field::Text(complex_text(row.get(at(k)).copied().unwrap_or_default())))
                    .collect()
            }
        }
    };

    let mut records = Records::new(io.out, cfg.format, "vnk", &["k", "v"]);
    for (k, v) in ks.iter().zip(values) {
        records.row(vec![Field::Small(u64::from(*k)), v])?;
    }
    Ok(())
}

pub fn spectra(cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    let n = cfg.require_n()?;
    if n < 2 {
        return Err(CliError::invalid("spectra needs n >= 2"));
    }
    if !cfg.is_unit() {
        return Err(CliError::invalid(
            "spectra supports unit weights and coefficients only",
        ));
    }
    let table = load_table(n, cfg, io.err)?;
    let report = spectrum(&ShiftedCharPoly::from_table(&table), cfg.precision)?;
    match cfg.format {
        Format::Csv => {
            io.out.write_all(report.to_csv().as_bytes())?;
            writeln!(io.err, "{}", report.summary_line())?;
        }
        Format::JsonLines => io.out.write_all(report.to_json_lines().as_bytes())?,
    }
    if !report.simple {
        writeln!(
            io.err,
            "warning: two roots within the resolvable separation (min {:e}); simplicity not certified",
            report.min_separation
        )?;
    }
    match report.unconverged() {
        0 => Ok(()),
        unconverged => Err(redheffer::Error::NonConvergence {
            unconverged,
            total: report.eigenvalues.len(),
            iterations: report.iterations,
        }
        .into()),
    }
}

pub fn det(cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    let n = cfg.require_n()?;
    let kind = cfg.matrix;
    match kind {
        MatrixKind::B if cfg.coeffs != CoeffSpec::Unit => {
            return Err(CliError::invalid("B has unit coefficients; drop --coeffs"));
        }
        MatrixKind::C if !cfg.is_unit() => {
            return Err(CliError::invalid(
                "C has unit coefficients and weights; drop --coeffs and --weights",
            ));
        }
        _ => {}
    }
    if cfg.verify_dense {
        if n > CHARPOLY_CAP as u64 {
            return Err(CliError::invalid(format!(
                "dense verification is capped at n = {CHARPOLY_CAP}"
            )));
        }
        if matches!(cfg.weights, WeightSpec::Dirichlet(_)) {
            return Err(CliError::invalid(
                "dense verification needs integer weights",
            ));
        }
    }

    let determinant = if n > DET_FORMULA_CAP {
        if kind != MatrixKind::C {
            return Err(CliError::invalid(format!(
                "the coefficient-sum determinant is capped at n = {DET_FORMULA_CAP} except for C"
            )));
        }
        Field::Int(det_from_vnk(&load_table(n, cfg, io.err)?.row(n)))
    } else {
        let size = n as usize;
        let a = cfg.coefficients(size)?;
        let variant = if kind == MatrixKind::Atilde { Variant::Atilde } else { Variant::A };
        match cfg.weight_vector(size)? {
            Weights::Exact(w) => Field::Int(det_weighted(&a, &w, size, variant)?),
            Weights::Complex(w) => Field::Text(complex_text(det_weighted(&a, &w, size, variant)?)),
        }
    };

    let label = Field::Text(kind.name().into());
    if !cfg.verify_dense {
        let mut records = Records::new(io.out, cfg.format, "det", &["n", "matrix", "determinant"]);
        records.row(vec![Field::Int(n.into()), label, determinant])?;
        return Ok(());
    }

    let size = n as usize;
    let a = cfg.coefficients(size)?;
    let Weights::Exact(w) = cfg.weight_vector(size)? else {
        unreachable!("complex weights rejected above");
    };
    let variant = if kind == MatrixKind::Atilde { Variant::Atilde } else { Variant::A };
    let dense = det_exact(&build_a(&a, &w, size, variant)?);
    let agree = matches!(&determinant, Field::Int(v) if *v == dense);
    let mut records = Records::new(
        io.out,
        cfg.format,
        "det",
        &["n", "matrix", "determinant", "dense", "match"],
    );
    records.row(vec![
        Field::Int(n.into()),
        label,
        determinant,
        Field::Int(dense),
        Field::Bool(agree),
    ])?;
    if agree {
        Ok(())
    } else {
        Err(CliError::mismatch("formula and dense determinants differ"))
    }
}

pub fn reproduce(table: Table, cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    match table {
        Table::Table1 => reproduce_table1(cfg, io),
        Table::Eigentable => reproduce_eigentable(cfg, io),
    }
}

fn reproduce_table1(cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    let mut ns = vec![1_000_000u64];
    if cfg.extended {
        ns.push(1 << 28);
    }
    if cfg.heroic {
        ns.push(1 << 36);
    }
    let mut failed = Vec::new();
    let mut rows: Vec<Vec<Field>> = Vec::new();
    for n in ns {
        let expected = reference_vnk(n).expect("embedded column");
        let row = load_table(n, cfg, io.err)?.row(n);
        let mut pass = 0;
        for (i, e) in expected.iter().enumerate() {
            let k = i + 1;
            let computed = row.get(k).cloned().unwrap_or_default();
            let ok = computed == *e;
            if ok {
                pass += 1;
            } else {
                failed.push(format!("v({n},{k})"));
            }
            rows.push(vec![
                Field::Int(n.into()),
                Field::Small(k as u64),
                Field::Int(e.clone()),
                Field::Int(computed),
                Field::Text(status(ok)),
            ]);
        }
        writeln!(io.err, "table1 n={n}: {pass}/{} cells pass", expected.len())?;
    }
    let mut records = Records::new(
        io.out,
        cfg.format,
        "cell",
        &["n", "k", "expected", "computed", "status"],
    );
    for row in rows {
        records.row(row)?;
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::mismatch(format!("mismatched cells: {}", failed.join(" "))))
    }
}

fn reproduce_eigentable(cfg: &RunConfig, io: &mut Io) -> Result<(), CliError> {
    let limit = if cfg.heroic {
        u64::MAX
    } else if cfg.extended {
        EXTENDED_EIGEN_MAX
    } else {
        1_000_000
    };
    let mut failed = Vec::new();
    let mut unconverged = 0;
    let mut rows: Vec<Vec<Field>> = Vec::new();
    for reference in reference_eigen().into_iter().filter(|r| r.n <= limit) {
        let n = reference.n;
        let table = load_table(n, cfg, io.err)?;
        let report = spectrum(&ShiftedCharPoly::from_table(&table), cfg.precision)?;
        unconverged += report.unconverged();
        let checks = [
            ("max_abs", &reference.max_abs, report.max_abs_f64()),
            ("max_re", &reference.max_re, report.max_re_f64()),
        ];
        for (quantity, expected, computed) in checks {
            let computed = computed.unwrap_or(f64::NAN);
            let expected_value: f64 = expected.parse().expect("decimal");
            let ok = (computed - expected_value).abs() <= EIGEN_TOLERANCE;
            if !ok {
                failed.push(format!("{quantity}({n})"));
            }
            rows.push(vec![
                Field::Int(n.into()),
                Field::Text(quantity.into()),
                Field::Text(expected.clone()),
                Field::Text(format!("{computed:.6}")),
                Field::Text(status(ok)),
            ]);
        }
        writeln!(io.err, "eigentable n={n}: {}", report.summary_line())?;
    }
    let mut records = Records::new(
        io.out,
        cfg.format,
        "cell",
        &["n", "quantity", "expected", "computed", "status"],
    );
    for row in rows {
        records.row(row)?;
    }
    if unconverged > 0 {
        return Err(CliError {
            code: crate::EXIT_NONCONVERGENCE,
            message: format!("{unconverged} roots did not converge"),
        });
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::mismatch(format!("mismatched cells: {}", failed.join(" "))))
    }
}

fn status(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.to_string()
}
