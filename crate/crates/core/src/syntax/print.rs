use super::{Action, Term};

const SUM: u8 = 0;
const PAR_NI: u8 = 1;
const PAR: u8 = 2;
const FACTOR: u8 = 3;

/// Renders a term in the surface syntax with minimal parentheses.
///
/// Prefixes whose bound name is unused print in the short forms `a.P` and
/// `~a.P`. Generated `#` names are printed verbatim; only
/// [`parse_term_internal`](super::parse_term_internal) reads them back.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, SUM, &mut out);
    out
}

fn level(t: &Term) -> u8 {
    match t {
        Term::Sum(..) => SUM,
        Term::ParNi(..) => PAR_NI,
        Term::Par(..) => PAR,
        _ => FACTOR,
    }
}

fn write_term(t: &Term, min: u8, out: &mut String) {
    if level(t) < min {
        out.push('(');
        write_term(t, SUM, out);
        out.push(')');
        return;
    }
    match t {
        Term::Sum(l, r) => binary(l, r, SUM, " (+) ", out),
        Term::ParNi(l, r) => binary(l, r, PAR_NI, " || ", out),
        Term::Par(l, r) => binary(l, r, PAR, " | ", out),
        Term::Lit(v) => out.push_str(&v.to_string()),
        Term::Scalar(k, b) => {
            out.push_str(&k.to_string());
            out.push_str(" * ");
            write_term(b, FACTOR, out);
        }
        Term::Prefix(a, b) => {
            write_action(a, b, out);
            out.push('.');
            write_term(b, FACTOR, out);
        }
        Term::Lin(a, b) => {
            out.push_str("lin ");
            write_action(a, b, out);
            out.push('.');
            write_term(b, FACTOR, out);
        }
        Term::Place(b) => {
            out.push('@');
            write_term(b, FACTOR, out);
        }
        Term::Nu(..) => {
            out.push_str("new");
            let mut body = t;
            while let Term::Nu(x, b) = body {
                out.push(' ');
                out.push_str(x.as_str());
                body = b;
            }
            out.push_str(". ");
            write_term(body, FACTOR, out);
        }
    }
}

fn binary(l: &Term, r: &Term, lvl: u8, op: &str, out: &mut String) {
    write_term(l, lvl, out);
    out.push_str(op);
    // left-associative: a right operand at the same level needs parentheses
    write_term(r, lvl + 1, out);
}

fn write_action(a: &Action, body: &Term, out: &mut String) {
    let used = body.free_names().contains(&a.bound);
    if used {
        out.push_str(a.subject.as_str());
        out.push(a.polarity.symbol());
        out.push('(');
        out.push_str(a.bound.as_str());
        out.push(')');
    } else {
        if a.polarity == super::Polarity::Neg {
            out.push('~');
        }
        out.push_str(a.subject.as_str());
    }
}
