//! Monospace word tables: one row per word, one column per position.

use paramword::{Alphabet, Letter, ParameterWord};

fn cell(l: Letter, alphabet: &Alphabet) -> String {
    match l {
        Letter::Sym(s) => alphabet.symbol(s).to_string(),
        Letter::Param(i) => format!("<{i}>"),
    }
}

/// Aligned table of labelled words. An empty list renders as the empty string.
pub fn render_word_table(rows: &[(String, ParameterWord)], alphabet: &Alphabet) -> String {
    render_sections(&[(String::new(), rows.to_vec())], alphabet)
}

/// Several labelled blocks sharing one column layout, separated by a rule.
pub fn render_sections(sections: &[(String, Vec<(String, ParameterWord)>)], alphabet: &Alphabet) -> String {
    let rows: Vec<&(String, ParameterWord)> = sections.iter().flat_map(|(_, r)| r).collect();
    if rows.is_empty() {
        return String::new();
    }
    let width = rows.iter().map(|(_, w)| w.len()).max().unwrap_or(0);
    let label_width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    let col: Vec<usize> = (0..width)
        .map(|j| {
            let widest = rows.iter().filter_map(|(_, w)| w.get(j)).map(|l| cell(l, alphabet).len()).max().unwrap_or(1);
            widest.max(j.to_string().len())
        })
        .collect();

    let line = |label: &str, cells: Vec<String>| -> String {
        let mut s = format!("{label:<label_width$} |");
        for (j, c) in cells.iter().enumerate() {
            s.push_str(&format!(" {c:>w$}", w = col[j]));
        }
        s.trim_end().to_string()
    };
    let rule = format!("{}-+{}", "-".repeat(label_width), col.iter().map(|w| "-".repeat(w + 1)).collect::<String>());

    let mut out = vec![line("", (0..width).map(|j| j.to_string()).collect()), rule.clone()];
    for (i, (title, block)) in sections.iter().enumerate() {
        if i > 0 {
            out.push(rule.clone());
        }
        if !title.is_empty() {
            out.push(format!("# {title}"));
        }
        for (label, w) in block {
            out.push(line(label, w.letters().iter().map(|&l| cell(l, alphabet)).collect()));
        }
    }
    out.join("\n") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use paramword::encoding::encode_poset;
    use paramword::Structure;

    #[test]
    fn two_chain_table() {
        let lxr = Alphabet::lxr();
        let words = encode_poset(&Structure::poset(2, &[(0, 1)])).unwrap();
        let rows: Vec<(String, ParameterWord)> =
            words.into_iter().enumerate().map(|(i, w)| (i.to_string(), w)).collect();
        let table = render_word_table(&rows, &lxr);
        assert_eq!(table, "  | 0 1 2 3\n--+--------\n0 | L R\n1 | R R L R\n");
    }

    #[test]
    fn empty_table() {
        assert_eq!(render_word_table(&[], &Alphabet::zero()), "");
    }

    #[test]
    fn parameters_widen_columns() {
        let zero = Alphabet::zero();
        let w = paramword::validate("0<0><11>", &zero).unwrap_err();
        assert!(matches!(w, paramword::Error::MalformedWord { .. }));
        let w = paramword::validate("0<0><1>", &zero).unwrap();
        let table = render_word_table(&[("W".into(), w)], &zero);
        assert_eq!(table, "  | 0   1   2\n--+----------\nW | 0 <0> <1>\n");
    }
}
