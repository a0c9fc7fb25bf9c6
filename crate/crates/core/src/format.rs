//! Text format for games.
//!
//! ```text
//! game   ::= expr
//! expr   ::= node | leaf
//! node   ::= '(' 'n' INT player expr+ ')'
//! leaf   ::= '(' 'o' INT INT+ ')'
//! player ::= 'P' INT
//! INT    ::= '-'? [0-9]+
//! ```
//!
//! Whitespace between tokens is ignored. The player count is the payoff
//! arity of the leaves, which must be uniform.

use std::fmt::{self, Write as _};

use crate::error::ParseError;
use crate::game::{GameNode, GameTree, NodeId, PlayerId};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Letter(char),
    Int(i64),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let bump = |line: &mut usize, column: &mut usize, c: char| {
            if c == '\n' {
                *line += 1;
                *column = 1;
            } else {
                *column += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(&mut line, &mut column, c);
            continue;
        }
        let tok = match c {
            '(' => {
                chars.next();
                column += 1;
                Tok::Open
            }
            ')' => {
                chars.next();
                column += 1;
                Tok::Close
            }
            'n' | 'o' | 'P' => {
                chars.next();
                column += 1;
                Tok::Letter(c)
            }
            '-' | '0'..='9' => {
                let mut digits = String::new();
                digits.push(c);
                chars.next();
                column += 1;
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                let value = digits.parse::<i64>().map_err(|_| ParseError::Syntax {
                    line: l,
                    column: col,
                    message: format!("invalid integer `{digits}`"),
                })?;
                Tok::Int(value)
            }
            other => {
                return Err(ParseError::Syntax {
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token {
            tok,
            line: l,
            column: col,
        });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self
            .tokens
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end);
        Err(ParseError::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn int(&mut self, what: &str) -> Result<i64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.error(format!("expected {what}")),
        }
    }

    fn index(&mut self, what: &str) -> Result<u32, ParseError> {
        let v = self.int(what)?;
        match u32::try_from(v) {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos -= 1;
                self.error(format!("{what} must be a non-negative 32-bit integer"))
            }
        }
    }

    fn expr(&mut self) -> Result<GameNode, ParseError> {
        self.expect(Tok::Open, "`(`")?;
        match self.peek() {
            Some(Tok::Letter('n')) => {
                self.pos += 1;
                let id = self.index("node id")?;
                self.expect(Tok::Letter('P'), "player `P<index>`")?;
                let owner = self.index("player index")? as usize;
                let mut children = Vec::new();
                while self.peek() == Some(&Tok::Open) {
                    children.push(self.expr()?);
                }
                self.expect(Tok::Close, "`(` or `)`")?;
                Ok(GameNode::Decision {
                    id: NodeId(id),
                    owner: PlayerId(owner),
                    children,
                })
            }
            Some(Tok::Letter('o')) => {
                self.pos += 1;
                let id = self.index("outcome id")?;
                let mut payoffs = Vec::new();
                while let Some(Tok::Int(v)) = self.peek() {
                    payoffs.push(*v);
                    self.pos += 1;
                }
                if payoffs.is_empty() {
                    return self.error("expected at least one payoff");
                }
                self.expect(Tok::Close, "payoff or `)`")?;
                Ok(GameNode::Outcome {
                    id: NodeId(id),
                    payoffs,
                })
            }
            _ => self.error("expected `n` or `o`"),
        }
    }
}

/// Parses the nested description without validating game invariants.
pub fn parse_node(text: &str) -> Result<GameNode, ParseError> {
    let tokens = lex(text)?;
    let end = end_position(text);
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let node = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("trailing input after game");
    }
    Ok(node)
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.matches('\n').count() + 1;
    let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Parses and validates a game.
pub fn parse_game(text: &str) -> Result<GameTree, ParseError> {
    Ok(GameTree::new(parse_node(text)?)?)
}

/// Splits a stream holding several games (as emitted by the generator)
/// into individual games.
pub fn parse_games(text: &str) -> Result<Vec<GameTree>, ParseError> {
    let tokens = lex(text)?;
    let end = end_position(text);
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let mut games = Vec::new();
    while parser.pos < parser.tokens.len() {
        games.push(GameTree::new(parser.expr()?)?);
    }
    Ok(games)
}

/// Canonical one-line text of a game, children in stored order.
pub fn serialize_game(tree: &GameTree) -> String {
    let mut out = String::new();
    write_node(&mut out, &tree.to_node()).expect("writing to a String");
    out
}

fn write_node(out: &mut String, node: &GameNode) -> fmt::Result {
    match node {
        GameNode::Outcome { id, payoffs } => {
            write!(out, "(o{id}")?;
            for p in payoffs {
                write!(out, " {p}")?;
            }
            out.push(')');
        }
        GameNode::Decision {
            id,
            owner,
            children,
        } => {
            write!(out, "(n{id} {owner}")?;
            for child in children {
                out.push(' ');
                write_node(out, child)?;
            }
            out.push(')');
        }
    }
    Ok(())
}

impl fmt::Display for GameTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_game(self))
    }
}

impl std::str::FromStr for GameTree {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_game(s)
    }
}
