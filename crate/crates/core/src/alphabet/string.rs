use std::fmt;

use crate::error::{Error, Result};

/// A finite string over the alphabet `{0, .., alphabet_size-1}`.
///
/// Symbols are written as base-36 digits (`0-9`, then `a-z`), which covers
/// every alphabet used by the builtin schemes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolString {
    alphabet_size: usize,
    symbols: Vec<u8>,
}

impl SymbolString {
    pub fn new(alphabet_size: usize, symbols: Vec<u8>) -> Result<Self> {
        if !(2..=256).contains(&alphabet_size) {
            return Err(Error::OutOfRange(format!(
                "alphabet size {alphabet_size} not in [2, 256]"
            )));
        }
        if let Some((position, &s)) = symbols
            .iter()
            .enumerate()
            .find(|(_, &s)| s as usize >= alphabet_size)
        {
            return Err(Error::SymbolOutOfRange {
                symbol: s as usize,
                position,
                alphabet: alphabet_size,
            });
        }
        Ok(Self {
            alphabet_size,
            symbols,
        })
    }

    pub fn empty(alphabet_size: usize) -> Self {
        Self {
            alphabet_size,
            symbols: Vec::new(),
        }
    }

    /// Parses a string of base-36 digits. No separators are accepted.
    pub fn parse(text: &str, alphabet_size: usize) -> Result<Self> {
        let symbols = text
            .chars()
            .enumerate()
            .map(|(position, c)| {
                c.to_digit(36)
                    .map(|d| d as u8)
                    .ok_or(Error::SymbolOutOfRange {
                        symbol: c as usize,
                        position,
                        alphabet: alphabet_size,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet_size, symbols)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Renders symbols as base-36 digits; the empty string renders as "".
pub(crate) fn write_digits(f: &mut impl fmt::Write, symbols: &[u8]) -> fmt::Result {
    for &s in symbols {
        match char::from_digit(s as u32, 36) {
            Some(c) => f.write_char(c)?,
            None => write!(f, "[{s}]")?,
        }
    }
    Ok(())
}

pub(crate) fn digits_to_string(symbols: &[u8]) -> String {
    let mut s = String::with_capacity(symbols.len());
    write_digits(&mut s, symbols).expect("writing to a String cannot fail");
    s
}

impl fmt::Display for SymbolString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.symbols)
    }
}
