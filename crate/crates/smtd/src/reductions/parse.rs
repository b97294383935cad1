//! Text formats for the source problems.

use super::{CnfFormula, Graph, QFormula, SetSystem};
use crate::error::{Error, Result};

fn syntax(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Syntax(format!("line {line}: {msg}"))
}

fn int<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T> {
    tok.parse().map_err(|_| syntax(line, format!("expected an integer, found {tok:?}")))
}

/// Header (`x r` for quantified input) plus clauses; shared by both DIMACS readers.
fn dimacs(text: &str, quantified: bool) -> Result<(usize, Option<usize>, Vec<Vec<i32>>)> {
    let mut header = None;
    let mut xvars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.first() {
            None => continue,
            Some(&"c") | Some(&"%") => continue,
            Some(&"p") => {
                if toks.len() != 4 || toks[1] != "cnf" || header.is_some() {
                    return Err(syntax(line, "expected a single `p cnf <vars> <clauses>` header"));
                }
                header = Some((int::<usize>(toks[2], line)?, int::<usize>(toks[3], line)?));
            }
            Some(&"x") if quantified => {
                if toks.len() != 2 || xvars.is_some() {
                    return Err(syntax(line, "expected a single `x <count>` line"));
                }
                xvars = Some(int::<usize>(toks[1], line)?);
            }
            Some(_) => {
                let Some((vars, _)) = header else {
                    return Err(syntax(line, "clause before the `p cnf` header"));
                };
                for tok in toks {
                    let lit: i32 = int(tok, line)?;
                    if lit == 0 {
                        clauses.push(std::mem::take(&mut current));
                    } else if lit.unsigned_abs() as usize > vars {
                        return Err(syntax(line, format!("literal {lit} exceeds {vars} variables")));
                    } else {
                        current.push(lit);
                    }
                }
            }
        }
    }
    let Some((vars, count)) = header else { return Err(Error::Syntax("missing `p cnf` header".into())) };
    if !current.is_empty() {
        return Err(Error::Syntax("last clause is not terminated by 0".into()));
    }
    if clauses.len() != count {
        return Err(Error::Syntax(format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Ok((vars, xvars, clauses))
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let (num_vars, _, clauses) = dimacs(text, false)?;
    Ok(CnfFormula { num_vars, clauses })
}

/// DIMACS with an `x r` line: variables `1..=r` are X, `r+1..=2r` are Y.
pub fn parse_qdimacs(text: &str) -> Result<QFormula> {
    let (vars, xvars, clauses) = dimacs(text, true)?;
    let r = xvars.ok_or_else(|| Error::Syntax("missing `x <count>` line".into()))?;
    if vars != 2 * r {
        return Err(Error::Syntax(format!("expected 2·{r} variables, header has {vars}")));
    }
    Ok(QFormula { r, clauses })
}

/// `n m` header, then `m` lines `u v` with 1-based endpoints.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && !t[0].starts_with('#'));
    let (line, head) = rows.next().ok_or_else(|| Error::Syntax("empty graph file".into()))?;
    if head.len() != 2 {
        return Err(syntax(line, "expected `n m`"));
    }
    let (n, m): (usize, usize) = (int(head[0], line)?, int(head[1], line)?);
    let mut edges = Vec::with_capacity(m);
    for (line, t) in rows {
        if t.len() != 2 {
            return Err(syntax(line, "expected `u v`"));
        }
        let (a, b): (usize, usize) = (int(t[0], line)?, int(t[1], line)?);
        if a == 0 || b == 0 {
            return Err(syntax(line, "vertices are 1-based"));
        }
        edges.push((a - 1, b - 1));
    }
    if edges.len() != m {
        return Err(Error::Syntax(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges).map_err(|e| Error::Syntax(e.to_string()))
}

/// One set per line (space-separated elements, 1-based); the universe is
/// `1..=` the largest element mentioned.
pub fn parse_set_system(text: &str, k: usize) -> Result<SetSystem> {
    let mut sets = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.starts_with('#') {
            continue;
        }
        if l.is_empty() {
            continue;
        }
        let s: Vec<usize> = l.split_whitespace().map(|t| int(t, i + 1)).collect::<Result<_>>()?;
        if s.contains(&0) {
            return Err(syntax(i + 1, "elements are 1-based"));
        }
        sets.push(s);
    }
    let universe = sets.iter().flatten().copied().max().unwrap_or(0);
    SetSystem::new(universe, sets, k)
}
