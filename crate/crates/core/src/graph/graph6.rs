use super::{Graph, GraphError, MAX_VERTICES};

const BIAS: u8 = 63;

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

/// Encodes `g` as a graph6 string (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.push((n >> 12 & 63) as u8 + BIAS);
        out.push((n >> 6 & 63) as u8 + BIAS);
        out.push((n & 63) as u8 + BIAS);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + BIAS);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 record. Surrounding whitespace is ignored; anything
/// else beyond the encoded bits is an error.
pub fn from_graph6(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.trim().as_bytes();
    if bytes.is_empty() {
        return Err(err("empty input"));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(BIAS..=126).contains(&b)) {
        return Err(err(format!(
            "byte {:#04x} at offset {pos} outside the printable range",
            bytes[pos]
        )));
    }
    let (n, header) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err("truncated size header"));
        }
        if bytes[1] == 126 {
            return Err(err("eight-byte size header unsupported"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &bytes[header..];
    if body.len() < need {
        return Err(err(format!(
            "truncated: expected {need} data bytes, found {}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(err(format!(
            "trailing data: expected {need} data bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::new(n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - BIAS;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.try_add_edge(i, j)?;
            }
            idx += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[need - 1] - BIAS;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(err("non-zero padding bits"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn k4_record() {
        let g = from_graph6("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 6);
        assert_eq!(to_graph6(&named::k4()), "C~");
    }

    #[test]
    fn reference_records() {
        // Five vertices: 0-2, 0-4, 1-3, 3-4.
        let g = from_graph6("DQc").unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(to_graph6(&named::petersen()), "IheA@GUAo");
        assert_eq!(to_graph6(&Graph::new(0).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::new(1).unwrap()), "@");
    }

    #[test]
    fn malformed_records() {
        assert!(matches!(from_graph6("C~~"), Err(GraphError::Graph6(m)) if m.contains("trailing")));
        assert!(matches!(from_graph6("C"), Err(GraphError::Graph6(m)) if m.contains("truncated")));
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C\x7f").is_err());
        assert!(from_graph6("C~ x").is_err());
        // Two vertices need one bit; the padding bits must be clear.
        assert!(from_graph6("A_").is_ok());
        assert!(from_graph6("A`").is_err());
    }

    #[test]
    fn long_header_round_trip() {
        let g = named::cycle(63);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
        let g = named::cycle(64);
        assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }
}
