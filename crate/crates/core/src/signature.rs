//! Constant symbols: the fixed logical vocabulary plus user, Skolem and
//! generated symbols.

use std::collections::HashMap;

use crate::types::Type;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(pub u32);

impl Symbol {
    pub const TRUE: Symbol = Symbol(0);
    pub const FALSE: Symbol = Symbol(1);
    pub const NOT: Symbol = Symbol(2);
    pub const OR: Symbol = Symbol(3);
    pub const AND: Symbol = Symbol(4);
    pub const IMPLIES: Symbol = Symbol(5);
    pub const EQUIV: Symbol = Symbol(6);
    /// Primitive equality, one instance per type (the type lives on the term).
    pub const EQ: Symbol = Symbol(7);
    /// Universal quantifier constant Π, one instance per type.
    pub const FORALL: Symbol = Symbol(8);
    /// Existential quantifier constant Σ, one instance per type.
    pub const EXISTS: Symbol = Symbol(9);
    pub const BOX: Symbol = Symbol(10);
    pub const DIA: Symbol = Symbol(11);

    const LOGICAL_COUNT: u32 = 12;

    pub fn is_logical(self) -> bool {
        self.0 < Self::LOGICAL_COUNT
    }

    /// Connectives that clausification decomposes.
    pub fn is_connective(self) -> bool {
        self.is_logical() && self != Symbol::TRUE && self != Symbol::FALSE
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    Logical,
    User,
    Skolem,
    /// Left inverse introduced by the injectivity rule.
    Inverse,
    /// Name introduced by definitional clausification.
    Definitional,
}

#[derive(Clone, Debug)]
pub struct SymbolInfo {
    pub name: String,
    /// `None` for the type-indexed logical families.
    pub ty: Option<Type>,
    pub kind: SymbolKind,
}

#[derive(Clone, Debug)]
pub struct Signature {
    symbols: Vec<SymbolInfo>,
    by_name: HashMap<String, Symbol>,
    base_types: Vec<String>,
    skolem_counter: u32,
}

impl Default for Signature {
    fn default() -> Self {
        Self::new()
    }
}

impl Signature {
    pub fn new() -> Self {
        let o = Type::o();
        let oo = Type::fun(o.clone(), o.clone());
        let ooo = Type::curried(&[o.clone(), o.clone()], o.clone());
        let logical: [(&str, Option<Type>); 12] = [
            ("$true", Some(o.clone())),
            ("$false", Some(o.clone())),
            ("~", Some(oo.clone())),
            ("|", Some(ooo.clone())),
            ("&", Some(ooo.clone())),
            ("=>", Some(ooo.clone())),
            ("<=>", Some(ooo)),
            ("=", None),
            ("!!", None),
            ("??", None),
            ("$box", Some(oo.clone())),
            ("$dia", Some(oo)),
        ];
        let mut sig = Signature {
            symbols: Vec::new(),
            by_name: HashMap::new(),
            base_types: vec!["$i".into(), "$o".into()],
            skolem_counter: 0,
        };
        for (name, ty) in logical {
            sig.symbols.push(SymbolInfo {
                name: name.to_string(),
                ty,
                kind: SymbolKind::Logical,
            });
        }
        sig
    }

    pub fn info(&self, s: Symbol) -> &SymbolInfo {
        &self.symbols[s.0 as usize]
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.symbols[s.0 as usize].name
    }

    pub fn kind(&self, s: Symbol) -> SymbolKind {
        self.symbols[s.0 as usize].kind
    }

    /// Declared type of a non-polymorphic symbol.
    pub fn type_of(&self, s: Symbol) -> Option<&Type> {
        self.symbols[s.0 as usize].ty.as_ref()
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.by_name.get(name).copied()
    }

    pub fn is_declared_base_type(&self, name: &str) -> bool {
        self.base_types.iter().any(|b| b == name)
    }

    pub fn declare_base_type(&mut self, name: &str) {
        if !self.is_declared_base_type(name) {
            self.base_types.push(name.to_string());
        }
    }

    pub fn base_types(&self) -> &[String] {
        &self.base_types
    }

    /// Declares (or re-declares with the same type) a user constant.
    pub fn declare(&mut self, name: &str, ty: Type, kind: SymbolKind) -> Result<Symbol, String> {
        if let Some(s) = self.lookup(name) {
            return match self.type_of(s) {
                Some(t) if *t == ty => Ok(s),
                _ => Err(format!("symbol `{name}` redeclared with a different type")),
            };
        }
        let s = Symbol(self.symbols.len() as u32);
        self.symbols.push(SymbolInfo {
            name: name.to_string(),
            ty: Some(ty),
            kind,
        });
        self.by_name.insert(name.to_string(), s);
        Ok(s)
    }

    /// A fresh `sk<N>` constant; never collides with an existing name.
    pub fn fresh_skolem(&mut self, ty: Type) -> Symbol {
        loop {
            self.skolem_counter += 1;
            let name = format!("sk{}", self.skolem_counter);
            if self.lookup(&name).is_none() {
                return self
                    .declare(&name, ty, SymbolKind::Skolem)
                    .expect("fresh name");
            }
        }
    }

    /// A fresh symbol derived from `base`, e.g. `sk1_inv`.
    pub fn fresh_named(&mut self, base: &str, ty: Type, kind: SymbolKind) -> Symbol {
        let mut name = base.to_string();
        let mut n = 1;
        while self.lookup(&name).is_some() {
            n += 1;
            name = format!("{base}{n}");
        }
        self.declare(&name, ty, kind).expect("fresh name")
    }

    pub fn symbols(&self) -> impl Iterator<Item = (Symbol, &SymbolInfo)> {
        self.symbols
            .iter()
            .enumerate()
            .map(|(i, info)| (Symbol(i as u32), info))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}
