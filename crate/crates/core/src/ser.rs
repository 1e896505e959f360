use std::fmt::Display;

use serde::Serializer;

pub(crate) fn display<T: Display, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
