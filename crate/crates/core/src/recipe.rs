//! Constructor expressions: `zn:4`, `product:zn:2,zn:4`,
//! `ri:zn:4,mu=2,eta=2`, `poly:zn:2,n=2`, `example:twisted-boolean-4`.
//!
//! Arguments are separated by top-level commas. Parentheses group a nested
//! expression, e.g. `product:(product:zn:2,zn:2),zn:3`.

use std::fmt;
use std::str::FromStr;

use crate::construct::{self, ExtensionSpec};
use crate::error::{ConstructionError, RecipeError};
use crate::ring::{Element, HARD_MAX_ORDER};
use crate::star::StarRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleRing {
    TwistedBoolean4,
    BooleanLike8,
    Transpose8,
    TriangularZ4,
    M2Z2,
}

impl ExampleRing {
    pub const ALL: [ExampleRing; 5] = [
        ExampleRing::TwistedBoolean4,
        ExampleRing::BooleanLike8,
        ExampleRing::Transpose8,
        ExampleRing::TriangularZ4,
        ExampleRing::M2Z2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExampleRing::TwistedBoolean4 => "twisted-boolean-4",
            ExampleRing::BooleanLike8 => "boolean-like-8",
            ExampleRing::Transpose8 => "transpose-8",
            ExampleRing::TriangularZ4 => "triangular-z4",
            ExampleRing::M2Z2 => "m2-z2",
        }
    }

    pub fn order(self) -> usize {
        match self {
            ExampleRing::TwistedBoolean4 => 4,
            ExampleRing::BooleanLike8 | ExampleRing::Transpose8 => 8,
            ExampleRing::M2Z2 => 16,
            ExampleRing::TriangularZ4 => 32,
        }
    }

    pub fn build(self) -> Result<StarRing, ConstructionError> {
        match self {
            ExampleRing::TwistedBoolean4 => construct::example_twisted_boolean_4(),
            ExampleRing::BooleanLike8 => construct::example_boolean_like_8(),
            ExampleRing::Transpose8 => construct::example_transpose_8(),
            ExampleRing::TriangularZ4 => construct::example_triangular_z4(),
            ExampleRing::M2Z2 => construct::matrices_2x2_z2(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Recipe {
    Zn(usize),
    Product(Box<Recipe>, Box<Recipe>),
    Ri {
        base: Box<Recipe>,
        mu: usize,
        eta: usize,
    },
    Poly {
        base: Box<Recipe>,
        n: usize,
    },
    Example(ExampleRing),
}

impl Recipe {
    /// Order of the ring this recipe builds, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        match self {
            Recipe::Zn(n) => Some(*n),
            Recipe::Product(a, b) => a.order()?.checked_mul(b.order()?),
            Recipe::Ri { base, .. } => base.order()?.checked_mul(base.order()?),
            Recipe::Poly { base, n } => base.order()?.checked_pow(u32::try_from(*n).ok()?),
            Recipe::Example(e) => Some(e.order()),
        }
    }

    pub fn build(&self) -> Result<StarRing, RecipeError> {
        self.build_capped(HARD_MAX_ORDER)
    }

    /// Builds the ring, refusing up front if the order would exceed `cap`.
    pub fn build_capped(&self, cap: usize) -> Result<StarRing, RecipeError> {
        let cap = cap.min(HARD_MAX_ORDER);
        match self.order() {
            Some(o) if o <= cap => {}
            o => {
                return Err(ConstructionError::CapExceeded {
                    order: o.unwrap_or(usize::MAX),
                    cap,
                }
                .into())
            }
        }
        Ok(match self {
            Recipe::Zn(n) => construct::make_zn_capped(*n, cap, false)?,
            Recipe::Product(a, b) => {
                construct::direct_product_capped(&a.build_capped(cap)?, &b.build_capped(cap)?, cap)?
            }
            Recipe::Ri { base, mu, eta } => {
                let b = base.build_capped(cap)?;
                for v in [*mu, *eta] {
                    if v >= b.order() {
                        return Err(syntax(self.to_string(), "parameter is not an element index"));
                    }
                }
                let spec = ExtensionSpec {
                    base: &b,
                    mu: Element::from_index(*mu),
                    eta: Element::from_index(*eta),
                };
                construct::extend_ri_capped(&spec, cap)?
            }
            Recipe::Poly { base, n } => construct::poly_quotient_capped(&base.build_capped(cap)?, *n, cap)?,
            Recipe::Example(e) => e.build()?,
        })
    }
}

fn syntax(expr: impl Into<String>, reason: &str) -> RecipeError {
    RecipeError::Syntax {
        expr: expr.into(),
        reason: reason.to_string(),
    }
}

/// Splits on commas outside parentheses.
fn split_args(s: &str) -> Result<Vec<&str>, RecipeError> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(syntax(s, "unbalanced parentheses"));
                }
            }
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax(s, "unbalanced parentheses"));
    }
    out.push(s[start..].trim());
    Ok(out)
}

fn strip_parens(s: &str) -> &str {
    let t = s.trim();
    if t.starts_with('(') && t.ends_with(')') && split_args(&t[1..t.len() - 1]).is_ok() {
        strip_parens(&t[1..t.len() - 1])
    } else {
        t
    }
}

fn keyed(arg: &str) -> Option<(&str, &str)> {
    let (k, v) = arg.split_once('=')?;
    (!k.is_empty() && k.chars().all(|c| c.is_ascii_alphabetic())).then_some((k.trim(), v.trim()))
}

fn number(expr: &str, v: &str) -> Result<usize, RecipeError> {
    v.parse()
        .map_err(|_| syntax(expr, &format!("`{v}` is not a non-negative integer")))
}

/// Positional arguments rejoined as one base expression, plus `key=value` pairs.
fn base_and_keys(
    expr: &str,
    args: &[&str],
    keys: &[&str],
) -> Result<(Recipe, Vec<usize>), RecipeError> {
    let positional: Vec<&str> = args.iter().copied().filter(|a| keyed(a).is_none()).collect();
    if positional.is_empty() {
        return Err(syntax(expr, "missing base ring"));
    }
    let base = parse(&positional.join(","))?;
    let mut values = vec![None; keys.len()];
    for (k, v) in args.iter().filter_map(|a| keyed(a)) {
        let slot = keys
            .iter()
            .position(|&want| want == k)
            .ok_or_else(|| syntax(expr, &format!("unexpected key `{k}`")))?;
        if values[slot].is_some() {
            return Err(syntax(expr, &format!("duplicate key `{k}`")));
        }
        values[slot] = Some(number(expr, v)?);
    }
    let values = values
        .into_iter()
        .zip(keys)
        .map(|(v, k)| v.ok_or_else(|| syntax(expr, &format!("missing `{k}=`"))))
        .collect::<Result<_, _>>()?;
    Ok((base, values))
}

pub fn parse(expr: &str) -> Result<Recipe, RecipeError> {
    let expr = strip_parens(expr);
    let (kind, rest) = expr
        .split_once(':')
        .ok_or_else(|| syntax(expr, "expected `kind:args`"))?;
    let args = split_args(rest)?;
    match kind.trim() {
        "zn" => match args[..] {
            [n] => Ok(Recipe::Zn(number(expr, n)?)),
            _ => Err(syntax(expr, "zn takes one argument")),
        },
        "product" => match args[..] {
            [a, b] => Ok(Recipe::Product(Box::new(parse(a)?), Box::new(parse(b)?))),
            _ => Err(syntax(expr, "product takes two ring expressions")),
        },
        "ri" => {
            let (base, v) = base_and_keys(expr, &args, &["mu", "eta"])?;
            Ok(Recipe::Ri {
                base: Box::new(base),
                mu: v[0],
                eta: v[1],
            })
        }
        "poly" => {
            let (base, v) = base_and_keys(expr, &args, &["n"])?;
            if v[0] == 0 {
                return Err(syntax(expr, "n must be positive"));
            }
            Ok(Recipe::Poly {
                base: Box::new(base),
                n: v[0],
            })
        }
        "example" => {
            let name = rest.trim();
            ExampleRing::ALL
                .into_iter()
                .find(|e| e.name() == name)
                .map(Recipe::Example)
                .ok_or_else(|| RecipeError::UnknownExample(name.to_string()))
        }
        other => Err(RecipeError::UnknownKind(other.to_string())),
    }
}

impl FromStr for Recipe {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn nested(r: &Recipe) -> String {
    match r {
        Recipe::Zn(_) | Recipe::Example(_) => r.to_string(),
        _ => format!("({r})"),
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Zn(n) => write!(f, "zn:{n}"),
            Recipe::Product(a, b) => write!(f, "product:{},{}", nested(a), nested(b)),
            Recipe::Ri { base, mu, eta } => write!(f, "ri:{},mu={mu},eta={eta}", nested(base)),
            Recipe::Poly { base, n } => write!(f, "poly:{},n={n}", nested(base)),
            Recipe::Example(e) => write!(f, "example:{}", e.name()),
        }
    }
}
