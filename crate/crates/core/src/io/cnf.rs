//! DIMACS CNF: `p cnf <vars> <clauses>` header, clauses as 0-terminated
//! signed literal sequences, possibly spanning lines.

use crate::error::{Error, Result};
use crate::sat::SatInstance;

use super::{ParseMode, Parsed};

pub fn parse_dimacs_cnf(text: &str, mode: ParseMode) -> Result<Parsed<SatInstance>> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    let mut last_lineno = 0usize;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last_lineno = lineno;
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(lineno, "duplicate p line"));
            }
            let mut tokens = line.split_whitespace().skip(1);
            if tokens.next() != Some("cnf") {
                return Err(Error::parse(lineno, "expected 'p cnf <vars> <clauses>'"));
            }
            let vars: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(lineno, "invalid variable count"))?;
            let m: usize = tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(lineno, "invalid clause count"))?;
            if tokens.next().is_some() {
                return Err(Error::parse(lineno, "trailing tokens after p line"));
            }
            header = Some((vars, m));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| Error::parse(lineno, "clause before the p line"))?;
        for token in line.split_whitespace() {
            let lit: i64 = token
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid literal '{token}'")))?;
            if lit == 0 {
                check_clause(&current, vars, lineno)?;
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }

    let (vars, m) = header.ok_or_else(|| Error::parse(0, "missing p line"))?;
    if !current.is_empty() {
        let msg = "final clause is not 0-terminated".to_string();
        match mode {
            ParseMode::Strict => return Err(Error::parse(last_lineno, msg)),
            ParseMode::Lenient => {
                warnings.push(format!("line {last_lineno}: {msg}"));
                check_clause(&current, vars, last_lineno)?;
                clauses.push(current);
            }
        }
    }
    if clauses.len() != m {
        let msg = format!("header says {m} clauses but {} parsed", clauses.len());
        match mode {
            ParseMode::Strict => return Err(Error::parse(0, msg)),
            ParseMode::Lenient => warnings.push(msg),
        }
    }
    let inst = SatInstance::new(vars, clauses)?;
    Ok(Parsed {
        value: inst,
        warnings,
    })
}

fn check_clause(clause: &[i64], vars: usize, lineno: usize) -> Result<()> {
    if clause.is_empty() {
        return Err(Error::parse(lineno, "empty clause"));
    }
    for &lit in clause {
        let v = lit.unsigned_abs() as usize;
        if v < 1 || v > vars {
            return Err(Error::parse(
                lineno,
                format!("literal {lit} out of range for {vars} variables"),
            ));
        }
        if clause.contains(&-lit) {
            return Err(Error::parse(
                lineno,
                format!("tautological clause: both {} and {}", lit.abs(), -lit.abs()),
            ));
        }
    }
    Ok(())
}

pub fn write_dimacs_cnf(inst: &SatInstance) -> String {
    let mut out = format!("p cnf {} {}\n", inst.num_vars, inst.clauses.len());
    for clause in &inst.clauses {
        for lit in clause {
            out.push_str(&format!("{lit} "));
        }
        out.push_str("0\n");
    }
    out
}
