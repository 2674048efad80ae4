use super::angle::parse_angle;
use super::ir::{CircuitIR, Element};
use super::validate::validate;
use super::{CircuitError, Diagnostic};

/// Parses and validates circuit text. Validation diagnostics are mapped back
/// to the source line of the offending element.
pub fn parse(text: &str) -> Result<CircuitIR, CircuitError> {
    let (ir, lines) = parse_unchecked(text)?;
    let mut diags = validate(&ir);
    if diags.is_empty() {
        return Ok(ir);
    }
    for d in &mut diags {
        d.line = match d.element {
            Some(e) => lines.get(e).copied(),
            None => lines.first().copied().or(Some(1)),
        };
    }
    Err(CircuitError::Invalid(diags))
}

/// Syntax-only parse. Returns the IR and the 1-based source line of each
/// element. Range and duplicate checks are left to [`validate`].
pub fn parse_unchecked(text: &str) -> Result<(CircuitIR, Vec<usize>), CircuitError> {
    let mut diags = Vec::new();
    let mut ir = CircuitIR::default();
    let mut have_modes = false;
    let mut lines = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim();

        if let Some(comment) = trimmed.strip_prefix('#') {
            if !have_modes {
                if let Some(name) = comment.trim_start().strip_prefix("name:") {
                    ir.name = name.trim().to_string();
                }
            }
            continue;
        }
        let code = match trimmed.find('#') {
            Some(at) => trimmed[..at].trim_end(),
            None => trimmed,
        };
        if code.is_empty() {
            continue;
        }

        let err = |message: String| Diagnostic { line: Some(lineno), element: None, message };
        let mut words = code.split_whitespace();
        let keyword = words.next().unwrap_or_default();

        if keyword == "modes" {
            let args: Vec<&str> = words.collect();
            if have_modes {
                diags.push(err("duplicate modes declaration".into()));
            } else if !ir.elements.is_empty() {
                diags.push(err("modes declaration must come first".into()));
            } else {
                match arity(keyword, &args, 1).and_then(|_| int(args[0])) {
                    Ok(n) => {
                        ir.mode_count = n;
                        have_modes = true;
                    }
                    Err(m) => diags.push(err(m)),
                }
            }
            continue;
        }

        let element = match keyword {
            "inject" => {
                let args: Vec<&str> = words.collect();
                arity(keyword, &args, 2).and_then(|_| {
                    Ok(Element::Inject { mode: int(args[0])?, count: count(args[1])? })
                })
            }
            "bs" => {
                let args: Vec<&str> = words.collect();
                arity(keyword, &args, 4).and_then(|_| {
                    Ok(Element::Beamsplitter {
                        i: int(args[0])?,
                        j: int(args[1])?,
                        theta: parse_angle(args[2])?,
                        phi: parse_angle(args[3])?,
                    })
                })
            }
            "ps" => {
                let args: Vec<&str> = words.collect();
                arity(keyword, &args, 2).and_then(|_| Ok(Element::PhaseShifter { i: int(args[0])?, phi: parse_angle(args[1])? }))
            }
            "postselect" => {
                let rest = code["postselect".len()..].trim();
                constraints(rest).map(|constraints| Element::Postselect { constraints })
            }
            other => Err(format!("unknown keyword '{other}'")),
        };

        match element {
            Ok(e) => {
                if !have_modes && diags.is_empty() {
                    diags.push(err("missing modes declaration".into()));
                }
                ir.elements.push(e);
                lines.push(lineno);
            }
            Err(m) => diags.push(err(m)),
        }
    }

    if !have_modes && diags.is_empty() {
        diags.push(Diagnostic { line: Some(1), element: None, message: "missing modes declaration".into() });
    }
    if diags.is_empty() {
        Ok((ir, lines))
    } else {
        Err(CircuitError::Syntax(diags))
    }
}

fn arity(keyword: &str, args: &[&str], want: usize) -> Result<(), String> {
    if args.len() == want {
        Ok(())
    } else {
        Err(format!("'{keyword}' expects {want} argument(s), found {}", args.len()))
    }
}

fn int(tok: &str) -> Result<usize, String> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a non-negative integer, found '{tok}'"));
    }
    tok.parse().map_err(|_| format!("integer '{tok}' is too large"))
}

fn count(tok: &str) -> Result<u32, String> {
    let n = int(tok)?;
    u32::try_from(n).map_err(|_| format!("integer '{tok}' is too large"))
}

fn constraints(rest: &str) -> Result<Vec<(usize, u32)>, String> {
    if rest.is_empty() {
        return Err("'postselect' expects at least one mode=count constraint".into());
    }
    rest.split(',')
        .map(|item| {
            let (m, c) = item
                .split_once('=')
                .ok_or_else(|| format!("malformed constraint '{}', expected mode=count", item.trim()))?;
            Ok((int(m.trim())?, count(c.trim())?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn syntax_lines(text: &str) -> Vec<(usize, String)> {
        match parse(text).unwrap_err() {
            CircuitError::Syntax(d) | CircuitError::Invalid(d) => {
                d.into_iter().map(|d| (d.line.unwrap(), d.message)).collect()
            }
        }
    }

    #[test]
    fn hom_circuit() {
        let ir = parse("modes 2\ninject 0 1\ninject 1 1\nbs 0 1 pi/4 0").unwrap();
        assert_eq!(ir.mode_count, 2);
        assert_eq!(ir.elements.len(), 3);
        assert_eq!(ir.elements[2], Element::Beamsplitter { i: 0, j: 1, theta: PI / 4.0, phi: 0.0 });
    }

    #[test]
    fn out_of_range_reports_line() {
        let err = parse("modes 2\nbs 0 5 pi/4 0").unwrap_err();
        assert!(matches!(err, CircuitError::Invalid(_)));
        let d = &err.diagnostics()[0];
        assert_eq!(d.line, Some(2));
        assert_eq!(d.element, Some(0));
        assert_eq!(d.message, "mode 5 out of range");
    }

    #[test]
    fn empty_text() {
        assert_eq!(syntax_lines(""), vec![(1, "missing modes declaration".to_string())]);
    }

    #[test]
    fn element_before_modes() {
        assert_eq!(syntax_lines("\ninject 0 1\nmodes 2"), vec![
            (2, "missing modes declaration".to_string()),
            (3, "modes declaration must come first".to_string()),
        ]);
    }

    #[test]
    fn comments_blank_lines_and_crlf() {
        let ir = parse("# name: demo\r\n\r\nmodes 3 # three\r\n  # note\r\npostselect 1 = 1 , 2=0\r\nps 2 -pi/2\r\n").unwrap();
        assert_eq!(ir.name, "demo");
        assert_eq!(ir.elements[0], Element::Postselect { constraints: vec![(1, 1), (2, 0)] });
        assert_eq!(ir.elements[1], Element::PhaseShifter { i: 2, phi: -PI / 2.0 });
    }

    #[test]
    fn malformed_inputs_are_line_anchored() {
        let cases = [
            ("modes 2\nfoo 1", 2, "unknown keyword 'foo'"),
            ("modes 2\n\ninject 0", 3, "'inject' expects 2 argument(s), found 1"),
            ("modes 2\nbs 0 1 pi/x 0", 2, "malformed angle 'pi/x'"),
            ("modes 2\ninject a 1", 2, "expected a non-negative integer, found 'a'"),
            ("modes 2\ninject -1 1", 2, "expected a non-negative integer, found '-1'"),
            ("modes 2\npostselect 0:1", 2, "malformed constraint '0:1', expected mode=count"),
            ("modes 2\npostselect", 2, "'postselect' expects at least one mode=count constraint"),
            ("modes 2\nmodes 3", 2, "duplicate modes declaration"),
            ("modes x", 1, "expected a non-negative integer, found 'x'"),
        ];
        for (text, line, msg) in cases {
            assert_eq!(syntax_lines(text), vec![(line, msg.to_string())], "{text:?}");
        }
    }

    #[test]
    fn collects_several_errors() {
        let lines: Vec<usize> = syntax_lines("modes 2\nfoo\nbar\ninject 0 1").into_iter().map(|(l, _)| l).collect();
        assert_eq!(lines, vec![2, 3]);
    }
}
