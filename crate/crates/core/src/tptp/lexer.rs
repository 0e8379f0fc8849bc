//! Tokenizer for the THF subset of TPTP.

use super::InputError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    /// `:=`
    Assign,
    /// `==`
    Identical,
    Eq,
    Neq,
    Not,
    Or,
    And,
    Implies,
    RevImplies,
    Equiv,
    Xor,
    Nor,
    Nand,
    Forall,
    Exists,
    Lambda,
    /// `!!`
    PiConst,
    /// `??`
    SigmaConst,
    At,
    Arrow,
    Star,
    Plus,
    /// `!>` (type quantification)
    TypeForall,
    /// `?*`, `@+`, `@-`, `#` and similar operators outside THF0.
    Exotic(String),
    Lower(String),
    Upper(String),
    Dollar(String),
    DollarDollar(String),
    Quoted(String),
    Distinct(String),
    Number(String),
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, InputError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, col, msg: String| InputError::Lexical { line, col, msg };
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            let (l0, c0) = (line, col);
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(err(l0, c0, "unterminated comment".into()));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
            continue;
        }
        let (l0, c0) = (line, col);
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, line: l0, col: c0 });
        if c.is_ascii_alphabetic() || c == '$' {
            let start = i;
            let dollars = if c == '$' {
                if chars.get(i + 1) == Some(&'$') {
                    2
                } else {
                    1
                }
            } else {
                0
            };
            for _ in 0..dollars {
                bump!();
            }
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                bump!();
            }
            let word: String = chars[start..i].iter().collect();
            if word.len() == dollars {
                return Err(err(l0, c0, "expected identifier after '$'".into()));
            }
            let tok = match dollars {
                2 => Tok::DollarDollar(word),
                1 => Tok::Dollar(word),
                _ if c.is_ascii_uppercase() => Tok::Upper(word),
                _ => Tok::Lower(word),
            };
            push(&mut out, tok);
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_digit() || matches!(chars[i], '.' | '/' | 'e' | 'E'))
            {
                // A trailing '.' ends a statement rather than starting a fraction.
                if chars[i] == '.' && !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    break;
                }
                bump!();
            }
            push(&mut out, Tok::Number(chars[start..i].iter().collect()));
            continue;
        }
        if c == '\'' || c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated quoted string".into())),
                    Some('\\') => {
                        bump!();
                        match chars.get(i) {
                            Some(&e) if e == '\\' || e == c => {
                                s.push(e);
                                bump!();
                            }
                            _ => return Err(err(line, col, "invalid escape".into())),
                        }
                    }
                    Some(&d) if d == c => {
                        bump!();
                        break;
                    }
                    Some(&d) => {
                        s.push(d);
                        bump!();
                    }
                }
            }
            if c == '\'' && s.is_empty() {
                return Err(err(l0, c0, "empty quoted name".into()));
            }
            push(&mut out, if c == '\'' { Tok::Quoted(s) } else { Tok::Distinct(s) });
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let table: &[(&str, Tok)] = &[
            ("<=>", Tok::Equiv),
            ("<~>", Tok::Xor),
            ("!!", Tok::PiConst),
            ("??", Tok::SigmaConst),
            ("!>", Tok::TypeForall),
            ("!=", Tok::Neq),
            ("=>", Tok::Implies),
            ("<=", Tok::RevImplies),
            ("~|", Tok::Nor),
            ("~&", Tok::Nand),
            (":=", Tok::Assign),
            ("==", Tok::Identical),
            ("?*", Tok::Exotic("?*".into())),
            ("@+", Tok::Exotic("@+".into())),
            ("@-", Tok::Exotic("@-".into())),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("[", Tok::LBracket),
            ("]", Tok::RBracket),
            (",", Tok::Comma),
            (".", Tok::Dot),
            (":", Tok::Colon),
            ("=", Tok::Eq),
            ("~", Tok::Not),
            ("|", Tok::Or),
            ("&", Tok::And),
            ("!", Tok::Forall),
            ("?", Tok::Exists),
            ("^", Tok::Lambda),
            ("@", Tok::At),
            (">", Tok::Arrow),
            ("*", Tok::Star),
            ("+", Tok::Plus),
            ("#", Tok::Exotic("#".into())),
            ("{", Tok::Exotic("{".into())),
            ("}", Tok::Exotic("}".into())),
        ];
        let Some((sym, tok)) = table.iter().find(|(s, _)| rest.starts_with(s)) else {
            return Err(err(l0, c0, format!("unexpected character {c:?}")));
        };
        for _ in 0..sym.chars().count() {
            bump!();
        }
        push(&mut out, tok.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn operators_and_words() {
        assert_eq!(
            toks("thf(a, axiom, ! [X: $i]: (p @ X) <=> ~ q != $$x)."),
            vec![
                Tok::Lower("thf".into()),
                Tok::LParen,
                Tok::Lower("a".into()),
                Tok::Comma,
                Tok::Lower("axiom".into()),
                Tok::Comma,
                Tok::Forall,
                Tok::LBracket,
                Tok::Upper("X".into()),
                Tok::Colon,
                Tok::Dollar("$i".into()),
                Tok::RBracket,
                Tok::Colon,
                Tok::LParen,
                Tok::Lower("p".into()),
                Tok::At,
                Tok::Upper("X".into()),
                Tok::RParen,
                Tok::Equiv,
                Tok::Not,
                Tok::Lower("q".into()),
                Tok::Neq,
                Tok::DollarDollar("$$x".into()),
                Tok::RParen,
                Tok::Dot,
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        assert_eq!(toks("% line\n/* block\n */ foo"), vec![Tok::Lower("foo".into())]);
        let t = tokenize("% c\n  foo").unwrap();
        assert_eq!((t[0].line, t[0].col), (2, 3));
    }

    #[test]
    fn integer_names_end_before_statement_dot() {
        assert_eq!(toks("12)."), vec![Tok::Number("12".into()), Tok::RParen, Tok::Dot]);
    }

    #[test]
    fn errors_carry_location() {
        match tokenize("a\n  `").unwrap_err() {
            InputError::Lexical { line, col, .. } => assert_eq!((line, col), (2, 3)),
            e => panic!("{e}"),
        }
        assert!(tokenize("/* open").is_err());
        assert!(tokenize("'abc").is_err());
    }
}
