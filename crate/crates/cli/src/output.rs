use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::{json, Value};

/// One-line JSON with `", "` and `": "` separators.
struct Spaced;

impl Formatter for Spaced {
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            w.write_all(b", ")
        }
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        w.write_all(b": ")
    }
}

pub fn to_line<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Spaced);
    value.serialize(&mut ser).expect("serialisable");
    String::from_utf8(buf).expect("utf-8")
}

pub fn print<T: Serialize>(value: &T) {
    println!("{}", to_line(value));
}

pub fn error(kind: &str, message: &str) {
    eprintln!("{}", to_line(&json!({ "error": kind, "message": message })));
}

/// Big counts as JSON numbers when they fit, strings otherwise.
pub fn count(s: &str) -> Value {
    s.parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(s))
}
