//! Deterministic JSON reports: sorted keys, two-space indentation and every
//! float printed with 17 significant digits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    Null,
    Bool(bool),
    Int(BigInt),
    Float(f64),
    Str(String),
    Arr(Vec<Node>),
    Obj(BTreeMap<String, Node>),
}

impl Node {
    pub fn obj<K: Into<String>>(entries: impl IntoIterator<Item = (K, Node)>) -> Node {
        Node::Obj(entries.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn arr(items: impl IntoIterator<Item = Node>) -> Node {
        Node::Arr(items.into_iter().collect())
    }

    pub fn opt(value: Option<impl Into<Node>>) -> Node {
        value.map_or(Node::Null, Into::into)
    }

    /// Adds or replaces a key; a no-op on anything but an object.
    pub fn insert(&mut self, key: &str, value: impl Into<Node>) {
        if let Node::Obj(map) = self {
            map.insert(key.to_string(), value.into());
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, depth: usize) {
        match self {
            Node::Null => out.push_str("null"),
            Node::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Node::Int(i) => write!(out, "{i}").unwrap(),
            Node::Float(x) => write_float(out, *x),
            Node::Str(s) => write_str(out, s),
            Node::Arr(items) if items.is_empty() => out.push_str("[]"),
            Node::Obj(map) if map.is_empty() => out.push_str("{}"),
            Node::Arr(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    out.push_str(if i == 0 { "\n" } else { ",\n" });
                    indent(out, depth + 1);
                    item.write(out, depth + 1);
                }
                out.push('\n');
                indent(out, depth);
                out.push(']');
            }
            Node::Obj(map) => {
                out.push('{');
                for (i, (key, value)) in map.iter().enumerate() {
                    out.push_str(if i == 0 { "\n" } else { ",\n" });
                    indent(out, depth + 1);
                    write_str(out, key);
                    out.push_str(": ");
                    value.write(out, depth + 1);
                }
                out.push('\n');
                indent(out, depth);
                out.push('}');
            }
        }
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

/// Non-finite values have no JSON number form and are written as strings.
fn write_float(out: &mut String, x: f64) {
    if x.is_nan() {
        out.push_str("\"nan\"");
    } else if x.is_infinite() {
        out.push_str(if x > 0.0 { "\"inf\"" } else { "\"-inf\"" });
    } else {
        write!(out, "{x:.16e}").unwrap();
    }
}

fn write_str(out: &mut String, s: &str) {
    out.push_str(&serde_json::to_string(s).expect("strings serialize"));
}

impl From<bool> for Node {
    fn from(b: bool) -> Self {
        Node::Bool(b)
    }
}

impl From<f64> for Node {
    fn from(x: f64) -> Self {
        Node::Float(x)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Self {
        Node::Str(s.to_string())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Self {
        Node::Str(s)
    }
}

impl From<BigInt> for Node {
    fn from(i: BigInt) -> Self {
        Node::Int(i)
    }
}

impl From<&BigInt> for Node {
    fn from(i: &BigInt) -> Self {
        Node::Int(i.clone())
    }
}

macro_rules! int_node {
    ($($t:ty),*) => {$(
        impl From<$t> for Node {
            fn from(i: $t) -> Self {
                Node::Int(BigInt::from(i))
            }
        }
    )*};
}

int_node!(i32, i64, u32, u64, usize);

impl<T: Into<Node>> From<Vec<T>> for Node {
    fn from(items: Vec<T>) -> Self {
        Node::Arr(items.into_iter().map(Into::into).collect())
    }
}
