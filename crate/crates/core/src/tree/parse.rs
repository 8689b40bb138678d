//! Parser for the s-expression tree format:
//!
//! ```text
//! node := "(L" SYMBOL ")" | "(" ROLE node node+ ")"     ROLE := "O" | "R" | "D"
//! ```
//!
//! `SYMBOL` is the block the leaf stands for, written as digits. Whitespace
//! between tokens is ignored and `#` starts a comment running to the end of
//! the line.

use std::iter::Peekable;
use std::str::Chars;

use super::{Role, TreeNode};
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_trivia();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of input"))),
        }
    }

    fn node(&mut self) -> Result<TreeNode> {
        self.expect('(')?;
        let tag = self
            .peek()
            .ok_or_else(|| self.error("expected a node tag, found end of input"))?;
        if tag == 'L' {
            self.bump();
            let block = self.symbol()?;
            self.expect(')')?;
            return Ok(TreeNode::Leaf(block));
        }
        let role = Role::from_tag(tag).ok_or_else(|| {
            self.error(format!("unknown node tag `{tag}`; expected L, O, R or D"))
        })?;
        self.bump();
        let mut children = Vec::new();
        while self.peek() == Some('(') {
            children.push(self.node()?);
        }
        if children.len() < 2 {
            return Err(self.error(format!(
                "`{tag}` node needs at least 2 children, found {}",
                children.len()
            )));
        }
        self.expect(')')?;
        Ok(TreeNode::Internal { role, children })
    }

    fn symbol(&mut self) -> Result<Vec<u8>> {
        self.skip_trivia();
        let mut block = Vec::new();
        while let Some(&c) = self.chars.peek() {
            match c.to_digit(36) {
                Some(d) if c.is_ascii_digit() || c.is_ascii_lowercase() => {
                    block.push(d as u8);
                    self.bump();
                }
                _ => break,
            }
        }
        if block.is_empty() {
            return Err(self.error("expected a leaf symbol"));
        }
        Ok(block)
    }
}

/// Parses one tree description; anything but trivia after it is an error.
pub fn parse_tree(text: &str) -> Result<TreeNode> {
    let mut cursor = Cursor::new(text);
    let node = cursor.node()?;
    if let Some(c) = cursor.peek() {
        return Err(cursor.error(format!("unexpected `{c}` after the tree")));
    }
    Ok(node)
}
