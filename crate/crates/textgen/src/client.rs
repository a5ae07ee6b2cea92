use std::cell::RefCell;
use std::collections::{BTreeMap, VecDeque};
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const API_KEY_VAR: &str = "OWLKIT_LLM_API_KEY";
pub const BASE_URL_VAR: &str = "OWLKIT_LLM_BASE_URL";

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("environment variable {0} is not set")]
    MissingApiKey(&'static str),
    #[error("request failed: {0}")]
    Transport(String),
    #[error("server answered {status}: {body}")]
    Http { status: u16, body: String },
    #[error("unexpected response shape: {0}")]
    Malformed(String),
    #[error("no recorded response for prompt {hash}")]
    MissingTranscriptEntry { hash: String },
    #[error("scripted client has no responses left")]
    Exhausted,
    #[error("transcript {path}: {message}")]
    Transcript { path: String, message: String },
}

/// A chat-completion backend: one prompt in, one completion out.
pub trait ExtractorClient {
    fn send(&self, prompt: &str) -> Result<String, ClientError>;
}

impl<C: ExtractorClient + ?Sized> ExtractorClient for &C {
    fn send(&self, prompt: &str) -> Result<String, ClientError> {
        (**self).send(prompt)
    }
}

pub fn prompt_hash(prompt: &str) -> String {
    hex::encode(Sha256::digest(prompt.as_bytes()))
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'a str,
    content: &'a str,
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    temperature: f64,
    messages: Vec<ChatMessage<'a>>,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<ChatChoice>,
}

#[derive(Deserialize)]
struct ChatChoice {
    message: ChatReply,
}

#[derive(Deserialize)]
struct ChatReply {
    content: String,
}

/// OpenAI-compatible chat-completion client. Requests carry temperature 0
/// and time out after 30 seconds.
pub struct HttpChatClient {
    agent: ureq::Agent,
    url: String,
    model: String,
    api_key: String,
}

impl HttpChatClient {
    pub fn new(base_url: &str, model: &str, api_key: &str) -> HttpChatClient {
        let config = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs(30)))
            .http_status_as_error(false)
            .build();
        HttpChatClient {
            agent: ureq::Agent::new_with_config(config),
            url: format!("{}/chat/completions", base_url.trim_end_matches('/')),
            model: model.to_string(),
            api_key: api_key.to_string(),
        }
    }

    /// Reads the API key from `OWLKIT_LLM_API_KEY` and the base URL from
    /// `OWLKIT_LLM_BASE_URL`, falling back to `default_base_url`.
    pub fn from_env(default_base_url: &str, model: &str) -> Result<HttpChatClient, ClientError> {
        let key =
            std::env::var(API_KEY_VAR).map_err(|_| ClientError::MissingApiKey(API_KEY_VAR))?;
        let base = std::env::var(BASE_URL_VAR).unwrap_or_else(|_| default_base_url.to_string());
        Ok(HttpChatClient::new(&base, model, &key))
    }
}

impl ExtractorClient for HttpChatClient {
    fn send(&self, prompt: &str) -> Result<String, ClientError> {
        let body = serde_json::to_string(&ChatRequest {
            model: &self.model,
            temperature: 0.0,
            messages: vec![ChatMessage {
                role: "user",
                content: prompt,
            }],
        })
        .map_err(|e| ClientError::Malformed(e.to_string()))?;
        let mut response = self
            .agent
            .post(&self.url)
            .header("Authorization", &format!("Bearer {}", self.api_key))
            .header("Content-Type", "application/json")
            .send(body)
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        let status = response.status().as_u16();
        let text = response
            .body_mut()
            .read_to_string()
            .map_err(|e| ClientError::Transport(e.to_string()))?;
        if !(200..300).contains(&status) {
            return Err(ClientError::Http { status, body: text });
        }
        let parsed: ChatResponse =
            serde_json::from_str(&text).map_err(|e| ClientError::Malformed(e.to_string()))?;
        parsed
            .choices
            .into_iter()
            .next()
            .map(|c| c.message.content)
            .ok_or_else(|| ClientError::Malformed("no choices".into()))
    }
}

/// One recorded exchange. The prompt text is kept for readability; lookup
/// goes through the hash.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub prompt_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prompt: Option<String>,
    pub response: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn load(path: impl AsRef<Path>) -> Result<Transcript, ClientError> {
        let path = path.as_ref();
        let err = |message: String| ClientError::Transcript {
            path: path.display().to_string(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| err(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Replays a transcript: each prompt is answered with the response recorded
/// under its SHA-256 hash.
#[derive(Debug, Clone, Default)]
pub struct MockClient {
    responses: BTreeMap<String, String>,
    fallback: Option<String>,
}

impl MockClient {
    pub fn new() -> MockClient {
        MockClient::default()
    }

    pub fn from_transcript(transcript: &Transcript) -> MockClient {
        MockClient {
            responses: transcript
                .entries
                .iter()
                .map(|e| (e.prompt_sha256.clone(), e.response.clone()))
                .collect(),
            fallback: None,
        }
    }

    pub fn with_response(mut self, prompt: &str, response: &str) -> MockClient {
        self.responses
            .insert(prompt_hash(prompt), response.to_string());
        self
    }

    /// Answer for prompts without a recorded response.
    pub fn with_fallback(mut self, response: &str) -> MockClient {
        self.fallback = Some(response.to_string());
        self
    }
}

impl ExtractorClient for MockClient {
    fn send(&self, prompt: &str) -> Result<String, ClientError> {
        let hash = prompt_hash(prompt);
        match self.responses.get(&hash).or(self.fallback.as_ref()) {
            Some(r) => Ok(r.clone()),
            None => Err(ClientError::MissingTranscriptEntry { hash }),
        }
    }
}

/// Answers prompts with a fixed sequence of responses, in order.
#[derive(Debug, Default)]
pub struct ScriptedClient {
    responses: RefCell<VecDeque<Result<String, String>>>,
}

impl ScriptedClient {
    pub fn new<S: Into<String>>(responses: impl IntoIterator<Item = S>) -> ScriptedClient {
        ScriptedClient {
            responses: RefCell::new(responses.into_iter().map(|s| Ok(s.into())).collect()),
        }
    }

    /// Queues a transport failure.
    pub fn then_fail(self, message: &str) -> ScriptedClient {
        self.responses
            .borrow_mut()
            .push_back(Err(message.to_string()));
        self
    }
}

impl ExtractorClient for ScriptedClient {
    fn send(&self, _prompt: &str) -> Result<String, ClientError> {
        match self.responses.borrow_mut().pop_front() {
            Some(Ok(r)) => Ok(r),
            Some(Err(m)) => Err(ClientError::Transport(m)),
            None => Err(ClientError::Exhausted),
        }
    }
}

/// Wraps a client and records every exchange into a transcript.
pub struct RecordingClient<C> {
    inner: C,
    transcript: RefCell<Transcript>,
}

impl<C: ExtractorClient> RecordingClient<C> {
    pub fn new(inner: C) -> RecordingClient<C> {
        RecordingClient {
            inner,
            transcript: RefCell::new(Transcript::default()),
        }
    }

    pub fn into_transcript(self) -> Transcript {
        self.transcript.into_inner()
    }
}

impl<C: ExtractorClient> ExtractorClient for RecordingClient<C> {
    fn send(&self, prompt: &str) -> Result<String, ClientError> {
        let response = self.inner.send(prompt)?;
        let hash = prompt_hash(prompt);
        let mut t = self.transcript.borrow_mut();
        if !t.entries.iter().any(|e| e.prompt_sha256 == hash) {
            t.entries.push(TranscriptEntry {
                prompt_sha256: hash,
                prompt: Some(prompt.to_string()),
                response: response.clone(),
            });
        }
        Ok(response)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mock_is_keyed_by_prompt() {
        let m = MockClient::new()
            .with_response("a", "1")
            .with_response("b", "2");
        assert_eq!(m.send("a").unwrap(), "1");
        assert_eq!(m.send("b").unwrap(), "2");
        assert_eq!(m.send("a").unwrap(), "1");
        assert!(matches!(
            m.send("c"),
            Err(ClientError::MissingTranscriptEntry { .. })
        ));
    }

    #[test]
    fn hash_is_sha256_hex() {
        assert_eq!(
            prompt_hash("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn recording_replays_through_mock() {
        let rec = RecordingClient::new(ScriptedClient::new(["x", "y"]));
        rec.send("p1").unwrap();
        rec.send("p2").unwrap();
        let t = rec.into_transcript();
        let back: Transcript = serde_json::from_str(&t.to_json()).unwrap();
        let mock = MockClient::from_transcript(&back);
        assert_eq!(mock.send("p2").unwrap(), "y");
    }

    #[test]
    fn scripted_sequence_and_failure() {
        let s = ScriptedClient::new(["one"]).then_fail("down");
        assert_eq!(s.send("").unwrap(), "one");
        assert!(matches!(s.send(""), Err(ClientError::Transport(_))));
        assert!(matches!(s.send(""), Err(ClientError::Exhausted)));
    }

    #[test]
    fn missing_key_is_reported() {
        if std::env::var(API_KEY_VAR).is_err() {
            assert!(matches!(
                HttpChatClient::from_env("http://localhost:9", "m"),
                Err(ClientError::MissingApiKey(_))
            ));
        }
    }
}
