use std::str::FromStr;

use super::{DiagramError, Event, FrontDiagram};

/// Parses diagram source text.
///
/// Two forms are accepted, with `#` starting a comment:
///
/// ```text
/// plat 3 : 2 2 4 3 3 3 2 4
/// front : L1 L3 X2 X2 R1 R1
/// ```
pub fn parse_plat(text: &str) -> Result<FrontDiagram, DiagramError> {
    let body: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .collect();
    let body = body.join(" ");
    let (head, tail) = body
        .split_once(':')
        .ok_or_else(|| DiagramError::Syntax("expected `plat <k> : <word>` or `front : <events>`".into()))?;
    let head: Vec<&str> = head.split_whitespace().collect();
    match head.as_slice() {
        ["plat", k] => {
            let k: usize = k
                .parse()
                .map_err(|_| DiagramError::Syntax(format!("bad left cusp count `{k}`")))?;
            if k == 0 {
                return Err(DiagramError::Syntax("a plat needs at least one left cusp".into()));
            }
            let word = tail
                .split_whitespace()
                .map(|w| {
                    w.parse::<usize>()
                        .ok()
                        .filter(|&p| p >= 1)
                        .ok_or_else(|| DiagramError::Syntax(format!("bad crossing position `{w}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            FrontDiagram::plat(k, &word)
        }
        ["front"] => {
            let events = tail.split_whitespace().map(parse_event).collect::<Result<Vec<_>, _>>()?;
            FrontDiagram::new(events)
        }
        _ => Err(DiagramError::Syntax(format!("unknown header `{}`", head.join(" ")))),
    }
}

fn parse_event(tok: &str) -> Result<Event, DiagramError> {
    let bad = || DiagramError::Syntax(format!("bad event `{tok}`"));
    let mut chars = tok.chars();
    let tag = chars.next().ok_or_else(bad)?;
    let p: usize = chars.as_str().parse().map_err(|_| bad())?;
    if p == 0 {
        return Err(bad());
    }
    match tag.to_ascii_uppercase() {
        'L' => Ok(Event::LeftCusp(p)),
        'R' => Ok(Event::RightCusp(p)),
        'X' => Ok(Event::Crossing(p)),
        _ => Err(bad()),
    }
}

impl FromStr for FrontDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_plat(s)
    }
}
