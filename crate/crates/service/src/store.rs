//! In-memory session store with optional write-through to blob files.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use qmonty_core::game::GameSession;

use crate::error::ApiError;

type Slot = Arc<Mutex<GameSession>>;

#[derive(Debug, Default)]
pub struct Store {
    sessions: RwLock<HashMap<String, Slot>>,
    data_dir: Option<PathBuf>,
}

impl Store {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Store backed by `dir`. Existing `*.json` blobs are loaded; unreadable
    /// ones are skipped with a warning.
    pub fn with_data_dir(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in std::fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let loaded = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|s| GameSession::from_blob(&s).map_err(|e| e.to_string()));
            match loaded {
                Ok(s) if !is_safe_id(&s.id) => {
                    tracing::warn!("skipping {}: unsafe session id", path.display())
                }
                Ok(s) => {
                    sessions.insert(s.id.clone(), Arc::new(Mutex::new(s)));
                }
                Err(e) => tracing::warn!("skipping {}: {e}", path.display()),
            }
        }
        Ok(Self {
            sessions: RwLock::new(sessions),
            data_dir: Some(dir),
        })
    }

    pub fn data_dir(&self) -> Option<&Path> {
        self.data_dir.as_deref()
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn insert(&self, session: GameSession) -> Result<(), ApiError> {
        self.persist(&session)?;
        self.sessions
            .write()
            .expect("store lock")
            .insert(session.id.clone(), Arc::new(Mutex::new(session)));
        Ok(())
    }

    fn slot(&self, id: &str) -> Result<Slot, ApiError> {
        self.sessions
            .read()
            .expect("store lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("no session `{id}`")))
    }

    pub fn get(&self, id: &str) -> Result<GameSession, ApiError> {
        Ok(self.slot(id)?.lock().expect("session lock").clone())
    }

    /// Runs `f` on the session with the session locked; the session is
    /// persisted and kept only if `f` succeeds.
    pub fn update<T>(
        &self,
        id: &str,
        f: impl FnOnce(&mut GameSession) -> Result<T, ApiError>,
    ) -> Result<(T, GameSession), ApiError> {
        let slot = self.slot(id)?;
        let mut guard = slot.lock().expect("session lock");
        let mut next = guard.clone();
        let out = f(&mut next)?;
        self.persist(&next)?;
        *guard = next.clone();
        Ok((out, next))
    }

    fn persist(&self, session: &GameSession) -> Result<(), ApiError> {
        let Some(dir) = &self.data_dir else {
            return Ok(());
        };
        let path = dir.join(format!("{}.json", session.id));
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, session.to_blob())
            .and_then(|_| std::fs::rename(&tmp, &path))
            .map_err(|e| ApiError::internal(format!("writing {}: {e}", path.display())))
    }
}

/// Ids become file names, so only plain tokens are accepted from disk.
fn is_safe_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}
