//! Whole-sentence driver: advance the engine word by word, interpret and
//! score every surviving state, discard all but the cheapest, and classify
//! the outcome.

use crate::adjudicator::{keep_minimum, mature, score, PenaltyConfig, PenaltyKind};
use crate::category::NameCtx;
use crate::engine::{advance, ParserState};
use crate::interpreter::{
    assess_penalties, disconnectedness, resolve_definites, DiscourseDb, PlausibilityDb,
};
use crate::lexicon::Lexicon;
use crate::term::{term_str, terms_str};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The sentence completed and at least one cheapest completion is not
    /// implausible.
    Ok,
    /// The analysis space emptied, or nothing completed by the end.
    GardenPath,
    /// The sentence completed, but every surviving completion describes an
    /// implausible state of affairs.
    Awkward,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::GardenPath => "garden_path",
            Verdict::Awkward => "awkward",
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("unknown word {0:?}")]
    UnknownWord(String),
}

#[derive(Clone, Debug, Serialize)]
pub struct PenaltyRecord {
    pub kind: &'static str,
    pub index: String,
    pub detected_at: u32,
    pub matured: bool,
    pub strength: u32,
}

/// One state's snapshot after a word, as it stood when kept or discarded.
#[derive(Clone, Debug, Serialize)]
pub struct StateRecord {
    /// Canonical category of each buffer constituent, left to right.
    pub buffer: Vec<String>,
    /// Terms that arrived with this word (lexical, posited, or
    /// rule-introduced).
    pub new_terms: Vec<String>,
    pub annotations: Vec<String>,
    pub penalties: Vec<PenaltyRecord>,
    pub score: u32,
    pub disconnectedness: usize,
    pub completed: bool,
    pub kept: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub word: String,
    pub word_clock: u32,
    pub states: Vec<StateRecord>,
    /// Kept states still awaiting more input.
    pub live: usize,
    /// Kept states that already form a finished analysis.
    pub completed: usize,
}

#[derive(Debug, Serialize)]
pub struct RunOutcome {
    pub verdict: Verdict,
    /// Word position and surface form where the analysis space emptied,
    /// when the verdict is a garden path before the end of the sentence.
    pub failed_at: Option<(u32, String)>,
    pub trace: Vec<TraceEvent>,
}

fn state_record(
    st: &ParserState,
    now: u32,
    cfg: &PenaltyConfig,
    kept: bool,
) -> StateRecord {
    let mut ctx = NameCtx::new();
    let buffer: Vec<String> = st.buffer.iter().map(|c| ctx.cat_str(&c.cat)).collect();
    let new_terms: Vec<String> = st.sem[st.sem_mark.min(st.sem.len())..]
        .iter()
        .map(|t| term_str(&mut ctx, t))
        .collect();
    let mut annotations = Vec::new();
    for (k, v) in &st.interp.resolutions {
        annotations.push(format!("resolved {} = {}", ctx.sem_name(*k), v));
    }
    for (k, q) in &st.interp.accoms {
        annotations.push(format!(
            "accommodated {} {}",
            ctx.sem_name(*k),
            terms_str(&mut ctx, q)
        ));
    }
    let penalties: Vec<PenaltyRecord> = st
        .interp
        .penalties
        .iter()
        .map(|p| PenaltyRecord {
            kind: p.kind.name(),
            index: ctx.sem_name(p.index),
            detected_at: p.detected_at,
            matured: mature(p, now, cfg),
            strength: cfg.strength(p.kind),
        })
        .collect();
    StateRecord {
        buffer,
        new_terms,
        annotations,
        penalties,
        score: score(&st.interp.penalties, now, cfg),
        disconnectedness: disconnectedness(&st.sem),
        completed: st.is_completed(),
        kept,
    }
}

/// Split a sentence into lexicon keys: whitespace tokens with sentence
/// punctuation stripped, falling back to lowercase when the surface form
/// itself is not listed.
fn tokenize(sentence: &str, lex: &Lexicon) -> Result<Vec<String>, RunError> {
    let mut out = Vec::new();
    for raw in sentence.split_whitespace() {
        let tok = raw.trim_matches(|c: char| ".,?!;:\"".contains(c));
        if tok.is_empty() {
            continue;
        }
        if lex.contains(tok) {
            out.push(tok.to_string());
        } else {
            let lower = tok.to_lowercase();
            if lex.contains(&lower) {
                out.push(lower);
            } else {
                return Err(RunError::UnknownWord(tok.to_string()));
            }
        }
    }
    if out.is_empty() {
        return Err(RunError::EmptySentence);
    }
    Ok(out)
}

/// Run one sentence against a discourse context. Each word: shift, reduce,
/// filter, interpret, score, and keep only the cheapest states. The verdict
/// comes from the completions still standing after the last word.
pub fn run_sentence(
    sentence: &str,
    lex: &Lexicon,
    db: &DiscourseDb,
    plaus: &PlausibilityDb,
    cfg: &PenaltyConfig,
) -> Result<RunOutcome, RunError> {
    let words = tokenize(sentence, lex)?;
    let last = words.len() as u32;
    let mut live = vec![ParserState::start()];
    let mut trace = Vec::new();
    let mut final_completed: Vec<ParserState> = Vec::new();

    for (i, word) in words.iter().enumerate() {
        let clock = (i + 1) as u32;
        for st in &mut live {
            st.sem_mark = st.sem.len();
        }
        let mut states = advance(&live, word, lex);
        for st in &mut states {
            resolve_definites(&mut st.interp, &st.sem, db, clock);
            assess_penalties(
                &mut st.interp,
                &st.sem,
                &st.buffer,
                &st.pronoun_indices,
                db,
                plaus,
                clock,
            );
        }
        let scores: Vec<u32> = states
            .iter()
            .map(|s| score(&s.interp.penalties, clock, cfg))
            .collect();
        let keep = keep_minimum(&scores);
        let records: Vec<StateRecord> = states
            .iter()
            .enumerate()
            .map(|(ix, st)| state_record(st, clock, cfg, keep.contains(&ix)))
            .collect();

        let mut kept_live = Vec::new();
        let mut kept_completed = Vec::new();
        for ix in keep {
            let st = states[ix].clone();
            if st.is_completed() {
                kept_completed.push(st);
            } else {
                kept_live.push(st);
            }
        }
        trace.push(TraceEvent {
            word: word.clone(),
            word_clock: clock,
            live: kept_live.len(),
            completed: kept_completed.len(),
            states: records,
        });
        final_completed = kept_completed;
        live = kept_live;
        if live.is_empty() && clock < last {
            // Finished analyses cannot take further words; with nothing
            // live either, the rest of the sentence is unparseable.
            return Ok(RunOutcome {
                verdict: Verdict::GardenPath,
                failed_at: Some((clock, word.clone())),
                trace,
            });
        }
    }

    if final_completed.is_empty() {
        let word = words.last().cloned().unwrap_or_default();
        return Ok(RunOutcome {
            verdict: Verdict::GardenPath,
            failed_at: Some((last, word)),
            trace,
        });
    }
    let all_implausible = final_completed.iter().all(|st| {
        st.interp
            .penalties
            .iter()
            .any(|p| p.kind == PenaltyKind::Implausibility && mature(p, last, cfg))
    });
    Ok(RunOutcome {
        verdict: if all_implausible {
            Verdict::Awkward
        } else {
            Verdict::Ok
        },
        failed_at: None,
        trace,
    })
}
