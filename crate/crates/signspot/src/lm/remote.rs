//! Client for a completion-style logprob endpoint.
//!
//! Wire contract: one `POST` per candidate with a JSON body naming the model,
//! the rendered prompt, and the candidate as the continuation text. The
//! endpoint replies with the per-token log-probabilities of that continuation:
//!
//! ```text
//! -> {"model": "...", "prompt": "...", "continuation": "Make"}
//! <- {"token_logprobs": [-0.31, -1.02]}
//! ```
//!
//! A candidate's score is the sum of its token log-probabilities; the final
//! transition probabilities are the softmax of the per-candidate scores.
//! Requests for one query run concurrently but results are aggregated in
//! candidate order, so output is independent of completion order.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lm::{LmBackendConfig, PromptStyle, PromptTemplate, TransitionModel, TransitionQuery};
use crate::util::softmax;

/// Environment variable holding the optional bearer token. The value is sent
/// as an `Authorization` header and never logged or echoed into reports.
pub const API_KEY_ENV: &str = "SIGNSPOT_LM_API_KEY";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogprobRequest {
    pub model: String,
    pub prompt: String,
    pub continuation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LogprobResponse {
    pub token_logprobs: Vec<f64>,
}

/// Parses and validates an endpoint response body.
pub fn parse_logprob_response(body: &str) -> Result<LogprobResponse> {
    let response: LogprobResponse = serde_json::from_str(body)?;
    if response.token_logprobs.is_empty() {
        return Err(Error::InvalidConfig(
            "logprob response carries no tokens".into(),
        ));
    }
    if response.token_logprobs.iter().any(|lp| !lp.is_finite()) {
        return Err(Error::NonFinite("token_logprobs".into()));
    }
    Ok(response)
}

/// Remote transition model backed by a frozen LLM behind an HTTP endpoint.
pub struct RemoteLm {
    agent: ureq::Agent,
    endpoint: String,
    model: String,
    max_retries: u32,
    template: PromptTemplate,
    style: PromptStyle,
    api_key: Option<String>,
}

impl RemoteLm {
    /// Builds a client from config, picking up the API key from
    /// [`API_KEY_ENV`] if set.
    pub fn from_config(config: &LmBackendConfig) -> Result<Self> {
        config.validate()?;
        if config.endpoint_url.is_empty() || config.model_name.is_empty() {
            return Err(Error::InvalidConfig(
                "remote backend requires an endpoint url and model name".into(),
            ));
        }
        let agent = ureq::AgentBuilder::new()
            .timeout(Duration::from_millis(config.timeout_ms))
            .build();
        Ok(Self {
            agent,
            endpoint: config.endpoint_url.clone(),
            model: config.model_name.clone(),
            max_retries: config.max_retries,
            template: PromptTemplate::default(),
            style: PromptStyle::default(),
            api_key: std::env::var(API_KEY_ENV).ok(),
        })
    }

    pub fn with_template(mut self, template: PromptTemplate, style: PromptStyle) -> Self {
        self.template = template;
        self.style = style;
        self
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }

    /// Scores one continuation, retrying on any failure (transport, HTTP
    /// status, malformed body). Total attempts are `max_retries + 1`; the
    /// last failure is surfaced verbatim in the returned error.
    fn score_candidate(&self, prompt: &str, continuation: &str) -> Result<f64> {
        let body = LogprobRequest {
            model: self.model.clone(),
            prompt: prompt.to_string(),
            continuation: continuation.to_string(),
        };
        let mut attempts = 0u32;
        loop {
            attempts += 1;
            let mut request = self.agent.post(&self.endpoint);
            if let Some(key) = &self.api_key {
                request = request.set("Authorization", &format!("Bearer {key}"));
            }
            let failure = match request.send_json(&body) {
                Ok(response) => match response.into_string() {
                    Ok(text) => match parse_logprob_response(&text) {
                        Ok(parsed) => return Ok(parsed.token_logprobs.iter().sum()),
                        Err(e) => format!("bad response body: {e}"),
                    },
                    Err(e) => format!("failed reading response: {e}"),
                },
                Err(e) => e.to_string(),
            };
            if attempts > self.max_retries {
                return Err(Error::Transport {
                    endpoint: self.endpoint.clone(),
                    attempts,
                    reason: failure,
                });
            }
        }
    }
}

impl TransitionModel for RemoteLm {
    fn transition_probs(&self, query: &TransitionQuery) -> Result<Vec<f64>> {
        let prompt = self.template.render(query, &self.style);
        let outcomes: Vec<Result<f64>> = std::thread::scope(|scope| {
            let handles: Vec<_> = query
                .candidates()
                .iter()
                .map(|candidate| {
                    let prompt = prompt.as_str();
                    let continuation = PromptTemplate::render_candidate(candidate, &self.style);
                    scope.spawn(move || self.score_candidate(prompt, &continuation))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("candidate scoring thread panicked"))
                .collect()
        });
        let totals = outcomes.into_iter().collect::<Result<Vec<f64>>>()?;
        Ok(softmax(&totals))
    }
}
