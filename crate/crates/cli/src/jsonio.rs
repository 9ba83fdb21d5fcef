//! Bit-exact JSON wrappers: rationals as `[numerator, denominator]` in
//! lowest terms with positive denominator, polynomials as arrays of such
//! pairs by ascending degree.

use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use cohsys::qpoly::{Rat, RationalPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRat(pub Rat);

fn rat_parts(r: &Rat) -> Result<(i64, i64), String> {
    let numer = r.numer().to_i64();
    let denom = r.denom().to_i64();
    match (numer, denom) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(format!("rational {r} exceeds the 64-bit interchange range")),
    }
}

impl Serialize for JsonRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let (n, d) = rat_parts(&self.0).map_err(serde::ser::Error::custom)?;
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&n)?;
        seq.serialize_element(&d)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for JsonRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts: [i64; 2] = Deserialize::deserialize(deserializer)?;
        if parts[1] == 0 {
            return Err(de::Error::custom("rational with zero denominator"));
        }
        Ok(JsonRat(Rat::new(parts[0].into(), parts[1].into())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonPoly(pub RationalPoly);

impl Serialize for JsonPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs = self.0.coeffs();
        let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
        for c in coeffs {
            seq.serialize_element(&JsonRat(c.clone()))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for JsonPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = JsonPoly;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an array of [numerator, denominator] pairs")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<JsonPoly, A::Error> {
                let mut coeffs = Vec::new();
                while let Some(JsonRat(c)) = seq.next_element()? {
                    coeffs.push(c);
                }
                Ok(JsonPoly(RationalPoly::new(coeffs)))
            }
        }

        deserializer.deserialize_seq(PolyVisitor)
    }
}
