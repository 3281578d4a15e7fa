use modlyap::cfword::matrix_to_word;
use modlyap::farey::{associated_matrix, markov_level, markov_word, mediant, min_level, FareyFraction, FareyTree};
use serde::Serialize;

use super::{unsupported, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::CliResult;
use crate::format::{csv, json};
use crate::Tree;

pub const DEFAULT_TREE_LEVEL: usize = 4;

#[derive(Serialize)]
struct Row {
    level: usize,
    p: String,
    q: String,
    word: String,
}

#[derive(Serialize)]
struct Dump<'a> {
    tree: &'a str,
    level: usize,
    rows: &'a [Row],
}

fn row(tree: FareyTree, x: &FareyFraction, word: String) -> Row {
    Row { level: min_level(tree, x).unwrap_or(0), p: x.p().to_string(), q: x.q().to_string(), word }
}

fn emit(tree: &str, level: usize, rows: &[Row], cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg.out {
        Format::Text | Format::Csv => Ok(Outcome::ok(csv(
            &["level", "p", "q", "word"],
            rows.iter().map(|r| vec![r.level.to_string(), r.p.clone(), r.q.clone(), r.word.clone()]),
        )?)),
        Format::Json => Ok(Outcome::ok(json(&Dump { tree, level, rows })?)),
        Format::Svg => Err(unsupported(cfg, "tree dumps")),
    }
}

/// Level dump; a fraction of the full tree carries the word of its path matrix, the matrix
/// associated with the two neighbours it is the mediant of.
pub fn farey(tree: Tree, cfg: &RunConfig) -> CliResult<Outcome> {
    let level = cfg.level_or(DEFAULT_TREE_LEVEL);
    match tree {
        Tree::Half => markov_dump(level, cfg),
        Tree::Full => {
            let (l, r) = FareyTree::Full.roots();
            let mut nodes = vec![(l, String::new()), (r, String::new())];
            for _ in 0..level {
                let mut next = Vec::with_capacity(2 * nodes.len() - 1);
                for pair in nodes.windows(2) {
                    let (a, b) = (&pair[0].0, &pair[1].0);
                    let word = matrix_to_word(&associated_matrix(a, b)?)?.to_string();
                    next.push(pair[0].clone());
                    next.push((mediant(a, b)?, word));
                }
                next.push(nodes.last().unwrap().clone());
                nodes = next;
            }
            let rows: Vec<Row> = nodes.into_iter().map(|(x, w)| row(FareyTree::Full, &x, w)).collect();
            emit("full", level, &rows, cfg)
        }
    }
}

fn markov_dump(level: usize, cfg: &RunConfig) -> CliResult<Outcome> {
    let rows: Vec<Row> = markov_level(level)
        .iter()
        .map(|(x, w)| row(FareyTree::Half, x, w.to_string()))
        .collect();
    emit("half", level, &rows, cfg)
}

#[derive(Serialize)]
struct MarkovOut {
    fraction: String,
    word: String,
    cf: String,
    s: u64,
}

pub fn markov(fraction: Option<&FareyFraction>, cfg: &RunConfig) -> CliResult<Outcome> {
    let Some(x) = fraction else {
        return markov_dump(cfg.level_or(DEFAULT_TREE_LEVEL), cfg);
    };
    let w = markov_word(x)?;
    let out = MarkovOut { fraction: x.to_string(), word: w.to_string(), cf: w.cf_string()?, s: w.s() };
    match cfg.out {
        Format::Text => Ok(Outcome::ok(format!("{} {}\n", out.word, out.cf))),
        Format::Json => Ok(Outcome::ok(json(&out)?)),
        _ => Err(unsupported(cfg, "markov --fraction")),
    }
}
