use serde::de::DeserializeOwned;
use serde::Serialize;

/// Pretty JSON with a trailing newline. Every numeric field in the report
/// types is an integer, so the rendering is exact and stable.
pub fn to_report_json<T: Serialize>(report: &T) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report types serialize infallibly");
    text.push('\n');
    text
}

pub fn from_report_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criticality::{check_assertion1, check_lemma2, extremal_digraph, AssertionReport, Cycle, Lemma2Report};
    use crate::digraph::Digraph;

    #[test]
    fn digraph_round_trip() {
        let d = extremal_digraph(6).unwrap();
        let text = to_report_json(&d);
        assert!(text.contains("\"order\": 6"));
        assert_eq!(from_report_json::<Digraph>(&text).unwrap(), d);
        assert!(from_report_json::<Digraph>(r#"{"order": 2, "edges": [[0, 0]]}"#).is_err());
    }

    #[test]
    fn checker_reports_round_trip() {
        let d = extremal_digraph(5).unwrap();
        let c = Cycle::new(vec![0, 1]).unwrap();
        let lemma2 = check_lemma2(&d, &c).unwrap();
        assert_eq!(from_report_json::<Lemma2Report>(&to_report_json(&lemma2)).unwrap(), lemma2);
        let a1 = check_assertion1(&d, &c).unwrap();
        let text = to_report_json(&a1);
        assert!(!text.contains('.'), "no floating point in reports: {text}");
        assert_eq!(from_report_json::<AssertionReport>(&text).unwrap(), a1);
    }
}
