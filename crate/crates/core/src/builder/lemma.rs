//! Six-round extension of a blue path by four vertices.

use super::session::{desync, Session, Step};
use crate::graph::{Color, Vertex};

use Color::{Blue, Red};

/// Grows the blue path `x … y` to four more vertices, or Painter makes a
/// red `P_4` on the way. Returns the new path.
pub(super) fn extend(s: &mut Session<'_>, path: &[Vertex]) -> Step<Vec<Vertex>> {
    if path.len() < 2 {
        return Err(desync("extension needs a blue path with two ends"));
    }
    let (x, y) = (path[0], *path.last().unwrap());
    let fwd = path.to_vec();
    let back: Vec<Vertex> = path.iter().rev().copied().collect();

    let (a, b) = s.fresh_pair();
    let ab = s.draw(a, b)?;
    let c = s.fresh();
    let bc = s.draw(b, c)?;
    // Orient so that v1 v2 is blue whenever the colors differ.
    let (v1, v2, v3, first, second) = if ab == Red && bc == Blue {
        (c, b, a, Blue, Red)
    } else {
        (a, b, c, ab, bc)
    };
    let v4 = s.fresh();
    let third = s.draw(v3, v4)?;
    let (v, pattern) = match (first, second, third) {
        (Red, Red, Blue) => ([v4, v3, v2, v1], [Blue, Red, Red]),
        (Red, Red, Red) => return Err(desync("red P4 inside the extension")),
        pat => ([v1, v2, v3, v4], [pat.0, pat.1, pat.2]),
    };
    let [v1, v2, v3, v4] = v;
    let cat = |parts: &[&[Vertex]]| parts.concat();
    match pattern {
        [Blue, Blue, Blue] => {
            if s.draw(x, v1)? == Blue {
                return Ok(cat(&[&back, &[v1, v2, v3, v4]]));
            }
            if s.draw(y, v1)? == Blue {
                return Ok(cat(&[&fwd, &[v1, v2, v3, v4]]));
            }
            s.force(y, v4)?;
            Ok(cat(&[&fwd, &[v4, v3, v2, v1]]))
        }
        [Blue, Blue, Red] => {
            if s.draw(x, v3)? == Blue {
                if s.draw(y, v4)? == Blue {
                    return Ok(cat(&[&[v1, v2, v3], &fwd, &[v4]]));
                }
                let v5 = s.fresh();
                s.force(y, v5)?;
                return Ok(cat(&[&[v1, v2, v3], &fwd, &[v5]]));
            }
            s.force(y, v4)?;
            s.force(v4, v1)?;
            Ok(cat(&[&fwd, &[v4, v1, v2, v3]]))
        }
        [Blue, Red, Blue] => {
            if s.draw(x, v2)? == Blue {
                if s.draw(y, v3)? == Blue {
                    return Ok(cat(&[&[v1, v2], &fwd, &[v3, v4]]));
                }
                s.force(y, v4)?;
                return Ok(cat(&[&[v1, v2], &fwd, &[v4, v3]]));
            }
            s.force(y, v3)?;
            s.force(x, v1)?;
            Ok(cat(&[&[v2, v1], &fwd, &[v3, v4]]))
        }
        [Blue, Red, Red] => {
            s.force(y, v4)?;
            let v5 = s.fresh();
            s.force(v2, v5)?;
            s.force(v4, v5)?;
            Ok(cat(&[&[v1, v2, v5, v4], &back]))
        }
        _ => Err(desync("unexpected extension pattern")),
    }
}
