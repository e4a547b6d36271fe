//! Game files: bracket notation `[q; w1, w2, ..., wn]` or a JSON object
//! `{"quota": q, "weights": [w1, ..., wn]}`.

use banzhaf_core::game::{validate_game, WeightedVotingGame};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invalid game: {0}")]
    Invalid(#[from] banzhaf_core::Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameObject {
    quota: i128,
    weights: Vec<i128>,
}

/// Parses either format; surrounding whitespace is ignored.
pub fn parse_game(text: &str) -> Result<WeightedVotingGame, ParseError> {
    let offset = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        parse_object(trimmed, offset)
    } else {
        parse_bracket(text)
    }
}

fn parse_object(text: &str, offset: usize) -> Result<WeightedVotingGame, ParseError> {
    let obj: GameObject = serde_json::from_str(text).map_err(|e| {
        // serde_json reports 1-based line/column; convert to a byte offset.
        let position = text.split_inclusive('\n').take(e.line().saturating_sub(1)).map(str::len).sum::<usize>()
            + e.column().saturating_sub(1);
        ParseError::Syntax { position: offset + position, message: e.to_string() }
    })?;
    Ok(validate_game(obj.quota, &obj.weights)?)
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(found) => Err(self.error(format!("expected `{c}`, found `{found}`"))),
            None => Err(self.error(format!("expected `{c}`, found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<i128, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.text.as_bytes();
        let mut end = start;
        if matches!(bytes.get(end), Some(b'-' | b'+')) {
            end += 1;
        }
        let digits_start = end;
        while bytes.get(end).is_some_and(u8::is_ascii_digit) {
            end += 1;
        }
        if end == digits_start {
            return Err(self.error("expected an integer"));
        }
        if matches!(bytes.get(end), Some(b'.' | b'e' | b'E')) {
            self.pos = end;
            return Err(self.error("weights and quota must be integers"));
        }
        let value = self.text[start..end].parse::<i128>().map_err(|_| self.error("integer out of range"))?;
        self.pos = end;
        Ok(value)
    }
}

fn parse_bracket(text: &str) -> Result<WeightedVotingGame, ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    cur.expect('[')?;
    let quota = cur.integer()?;
    cur.expect(';')?;
    let mut weights = Vec::new();
    if cur.peek() != Some(']') {
        loop {
            weights.push(cur.integer()?);
            match cur.peek() {
                Some(',') => cur.expect(',')?,
                _ => break,
            }
        }
    }
    cur.expect(']')?;
    if cur.peek().is_some() {
        return Err(cur.error("trailing characters after game"));
    }
    Ok(validate_game(quota, &weights)?)
}

pub fn render_bracket(game: &WeightedVotingGame) -> String {
    game.to_string()
}

pub fn render_object(game: &WeightedVotingGame) -> String {
    let obj = GameObject { quota: game.quota().into(), weights: game.weights().iter().map(|&w| w.into()).collect() };
    serde_json::to_string(&obj).expect("plain integers serialize")
}
