#![no_main]

use libfuzzer_sys::fuzz_target;
use signspot::lm::{PromptStyle, PromptTemplate, TransitionQuery};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // First line is the separator, the rest is the template body.
    let (separator, body) = match text.split_once('\n') {
        Some((sep, body)) => (sep, body),
        None => (", ", text),
    };
    if let Ok(template) = PromptTemplate::new(body, separator) {
        let query = TransitionQuery::new(
            vec!["TOGETHER".into(), "WE".into()],
            vec!["SHORT".into(), "MAKE".into()],
        )
        .unwrap();
        let _ = template.render(&query, &PromptStyle::default());
    }
});
