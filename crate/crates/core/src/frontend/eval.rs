use std::fmt;
use std::str::FromStr;

use crate::algebra::{CoreElement, MixedElement};
use crate::chain::{AdicWord, DivisorChain};
use crate::deep::DeepElement;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::gradings::ElementaryGrading;
use crate::leavitt::LeavittElement;

use super::parse::{Expression, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraKind {
    Core,
    Leavitt,
    Deep,
    Mixed,
}

impl AlgebraKind {
    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::Core => "core",
            AlgebraKind::Leavitt => "leavitt",
            AlgebraKind::Deep => "deep",
            AlgebraKind::Mixed => "mixed",
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(AlgebraKind::Core),
            "leavitt" => Ok(AlgebraKind::Leavitt),
            "deep" => Ok(AlgebraKind::Deep),
            "mixed" => Ok(AlgebraKind::Mixed),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

/// Everything an expression is evaluated against.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub field: FieldDescriptor,
    pub algebra: AlgebraKind,
    pub chain: DivisorChain,
    pub grading: Option<ElementaryGrading>,
}

impl SessionConfig {
    pub fn new(field: FieldDescriptor, algebra: AlgebraKind, chain: DivisorChain) -> Self {
        Self {
            field,
            algebra,
            chain,
            grading: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Core(CoreElement),
    Leavitt(LeavittElement),
    Deep(DeepElement),
    Mixed(MixedElement),
}

impl Value {
    pub fn kind(&self) -> AlgebraKind {
        match self {
            Value::Core(_) => AlgebraKind::Core,
            Value::Leavitt(_) => AlgebraKind::Leavitt,
            Value::Deep(_) => AlgebraKind::Deep,
            Value::Mixed(_) => AlgebraKind::Mixed,
        }
    }

    pub fn scalar(config: &SessionConfig, s: &Scalar) -> Value {
        match config.algebra {
            AlgebraKind::Core => Value::Core(CoreElement::scalar(&config.chain, s)),
            AlgebraKind::Leavitt => Value::Leavitt(LeavittElement::scalar(&config.chain, s)),
            AlgebraKind::Deep => Value::Deep(
                DeepElement::scaled(&config.chain, &AdicWord::empty(), &AdicWord::empty(), s).expect("empty words"),
            ),
            AlgebraKind::Mixed => Value::Mixed(MixedElement::recurrent(CoreElement::scalar(&config.chain, s))),
        }
    }

    fn pair<'a>(&'a self, other: &'a Value) -> Result<(&'a Value, &'a Value)> {
        if self.kind() != other.kind() {
            return Err(Error::KindMismatch(self.kind().to_string(), other.kind().to_string()));
        }
        Ok((self, other))
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        Ok(match self.pair(other)? {
            (Value::Core(a), Value::Core(b)) => Value::Core(a.add(b)?),
            (Value::Leavitt(a), Value::Leavitt(b)) => Value::Leavitt(a.add(b)?),
            (Value::Deep(a), Value::Deep(b)) => Value::Deep(a.add(b)?),
            (Value::Mixed(a), Value::Mixed(b)) => Value::Mixed(a.add(b)?),
            _ => unreachable!("kinds checked"),
        })
    }

    pub fn mul(&self, other: &Value) -> Result<Value> {
        Ok(match self.pair(other)? {
            (Value::Core(a), Value::Core(b)) => Value::Core(a.mul(b)?),
            (Value::Leavitt(a), Value::Leavitt(b)) => Value::Leavitt(a.mul(b)?),
            (Value::Deep(a), Value::Deep(b)) => Value::Deep(a.mul(b)?),
            (Value::Mixed(a), Value::Mixed(b)) => Value::Mixed(a.mul(b)?),
            _ => unreachable!("kinds checked"),
        })
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Core(a) => Value::Core(a.neg()),
            Value::Leavitt(a) => Value::Leavitt(a.neg()),
            Value::Deep(a) => Value::Deep(a.neg()),
            Value::Mixed(a) => Value::Mixed(a.neg()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Core(a) => a.is_zero(),
            Value::Leavitt(a) => a.is_zero(),
            Value::Deep(a) => a.is_zero(),
            Value::Mixed(a) => a.is_zero(),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Core(a) => a.fmt(f),
            Value::Leavitt(a) => a.fmt(f),
            Value::Deep(a) => a.fmt(f),
            Value::Mixed(a) => a.fmt(f),
        }
    }
}

fn generator(g: &Generator, config: &SessionConfig) -> Result<Value> {
    let (chain, field) = (&config.chain, config.field);
    let one = field.one();
    let mismatch = || Error::KindMismatch(g.to_string(), config.algebra.to_string());
    Ok(match (config.algebra, g) {
        (AlgebraKind::Core, Generator::E(u, v)) => Value::Core(CoreElement::unit(chain, field, u, v)?),
        (AlgebraKind::Mixed, Generator::E(u, v)) => {
            Value::Mixed(MixedElement::recurrent(CoreElement::unit(chain, field, u, v)?))
        }
        (AlgebraKind::Mixed, Generator::F(r, c)) => Value::Mixed(MixedElement::finite_unit(chain, &one, *r, *c)),
        (AlgebraKind::Deep, Generator::D(u, v)) => Value::Deep(DeepElement::d_unit(chain, field, u, v)?),
        (AlgebraKind::Leavitt, Generator::X(i)) => Value::Leavitt(LeavittElement::gen_x(chain, field, *i)?),
        (AlgebraKind::Leavitt, Generator::Y(i)) => Value::Leavitt(LeavittElement::gen_y(chain, field, *i)?),
        (AlgebraKind::Leavitt, Generator::XWord(w)) => {
            Value::Leavitt(LeavittElement::term(chain, w, &AdicWord::empty(), &one)?)
        }
        (AlgebraKind::Leavitt, Generator::YWord(w)) => {
            Value::Leavitt(LeavittElement::term(chain, &AdicWord::empty(), w, &one)?)
        }
        _ => return Err(mismatch()),
    })
}

/// Evaluates to a canonical element of the configured algebra.
pub fn evaluate(expr: &Expression, config: &SessionConfig) -> Result<Value> {
    match expr {
        Expression::Scalar(s) => Ok(Value::scalar(config, &config.field.parse_scalar(s)?)),
        Expression::Gen(g) => generator(g, config),
        Expression::Add(a, b) => evaluate(a, config)?.add(&evaluate(b, config)?),
        Expression::Sub(a, b) => evaluate(a, config)?.add(&evaluate(b, config)?.neg()),
        Expression::Mul(a, b) => evaluate(a, config)?.mul(&evaluate(b, config)?),
        Expression::Neg(a) => Ok(evaluate(a, config)?.neg()),
        Expression::Pow(a, k) => {
            let base = evaluate(a, config)?;
            let mut acc = Value::scalar(config, &config.field.one());
            for _ in 0..*k {
                acc = acc.mul(&base)?;
            }
            Ok(acc)
        }
    }
}
