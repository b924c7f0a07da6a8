//! Session persistence. The store itself only reads and writes whole
//! records; [`Sessions`] adds the one-writer-per-session rule on top.

use crate::session::Session;
use std::collections::HashMap;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("no session `{0}`")]
    NotFound(String),
    #[error("session storage is full")]
    StorageFull,
    #[error("session `{id}` is unreadable: {reason}")]
    Corrupt { id: String, reason: String },
    #[error("session storage: {0}")]
    Io(std::io::Error),
}

impl From<std::io::Error> for StoreError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == ErrorKind::StorageFull {
            StoreError::StorageFull
        } else {
            StoreError::Io(e)
        }
    }
}

pub trait SessionStore: Send + Sync {
    fn save(&self, session: &Session) -> Result<(), StoreError>;
    fn load(&self, id: &str) -> Result<Session, StoreError>;
}

/// Ids are ULIDs; anything else cannot name a stored session.
fn checked(id: &str) -> Result<ulid::Ulid, StoreError> {
    ulid::Ulid::from_string(id).map_err(|_| StoreError::NotFound(id.to_string()))
}

/// One pretty-printed JSON file per session, replaced atomically.
#[derive(Debug, Clone)]
pub struct FileStore {
    dir: PathBuf,
}

impl FileStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(FileStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, id: ulid::Ulid) -> PathBuf {
        self.dir.join(format!("{id}.json"))
    }
}

impl SessionStore for FileStore {
    fn save(&self, session: &Session) -> Result<(), StoreError> {
        let id = checked(&session.id)?;
        let bytes = serde_json::to_vec_pretty(session).expect("sessions serialize");
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(id)).map_err(|e| StoreError::from(e.error))?;
        Ok(())
    }

    fn load(&self, id: &str) -> Result<Session, StoreError> {
        let path = self.path(checked(id)?);
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return Err(StoreError::NotFound(id.to_string())),
            Err(e) => return Err(e.into()),
        };
        serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt {
            id: id.to_string(),
            reason: e.to_string(),
        })
    }
}

/// In-process store, mostly for tests and embedding.
#[derive(Debug, Default)]
pub struct MemoryStore {
    records: Mutex<HashMap<String, String>>,
}

impl SessionStore for MemoryStore {
    fn save(&self, session: &Session) -> Result<(), StoreError> {
        checked(&session.id)?;
        let json = serde_json::to_string(session).expect("sessions serialize");
        self.records.lock().unwrap().insert(session.id.clone(), json);
        Ok(())
    }

    fn load(&self, id: &str) -> Result<Session, StoreError> {
        let records = self.records.lock().unwrap();
        let json = records.get(id).ok_or_else(|| StoreError::NotFound(id.to_string()))?;
        serde_json::from_str(json).map_err(|e| StoreError::Corrupt {
            id: id.to_string(),
            reason: e.to_string(),
        })
    }
}

/// A store plus a lock per session id, so read-modify-write cycles on one
/// session never interleave while different sessions proceed in parallel.
pub struct Sessions {
    store: Arc<dyn SessionStore>,
    locks: Mutex<HashMap<String, Arc<Mutex<()>>>>,
}

impl Sessions {
    pub fn new(store: Arc<dyn SessionStore>) -> Self {
        Sessions {
            store,
            locks: Mutex::new(HashMap::new()),
        }
    }

    fn lock_for(&self, id: &str) -> Arc<Mutex<()>> {
        self.locks.lock().unwrap().entry(id.to_string()).or_default().clone()
    }

    pub fn create(&self, session: &Session) -> Result<(), StoreError> {
        let lock = self.lock_for(&session.id);
        let _guard = lock.lock().unwrap();
        self.store.save(session)
    }

    pub fn load(&self, id: &str) -> Result<Session, StoreError> {
        self.store.load(id)
    }

    /// Loads, edits and saves one session under its write lock. Nothing is
    /// saved when `edit` fails.
    pub fn update<T, E>(&self, id: &str, edit: impl FnOnce(&mut Session) -> Result<T, E>) -> Result<T, E>
    where
        E: From<StoreError>,
    {
        let lock = self.lock_for(id);
        let _guard = lock.lock().unwrap_or_else(|p| p.into_inner());
        let mut session = self.store.load(id)?;
        let out = edit(&mut session)?;
        self.store.save(&session)?;
        Ok(out)
    }
}
