"""Client for an academic-graph evaluate endpoint.

Builds field-of-study expression queries, pages through evaluate responses
with rate limiting and bounded retries, and runs fully offline against
recorded fixture pages (one JSON document per page, named page-0001.json,
page-0002.json, ...). Each response document carries an ``entities`` list;
an entity looks like::

    {"Id": 3006967091, "Ti": "...", "Y": 2020, "D": "2020-02-15",
     "VFN": "...", "DOI": "...", "CC": 60, "RId": [2304, 9981],
     "CitCon": {"2304": ["passage one", "passage two"]}}

The hosted service this mirrors has been retired; the schema above is pinned
by the fixture conformance files, and live mode targets compatible
self-hosted endpoints.
"""

from __future__ import annotations

import json
import time
import urllib.error
import urllib.parse
import urllib.request
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .corpus import CitationContext, Record

DEFAULT_ATTRIBUTES = "Id,Ti,Y,D,VFN,DOI,CC,RId,CitCon"


class EmptyQueryError(ValueError):
    pass


class AuthFailureError(RuntimeError):
    """Credential rejected; never retried."""


class RateLimitedError(RuntimeError):
    """Server-side throttle; retried within the backoff budget, then surfaced."""


class TransientError(RuntimeError):
    pass


@dataclass(frozen=True)
class QueryExpr:
    terms: tuple[str, ...]
    rendered: str


def build_fos_query(fields_of_study: list[str]) -> QueryExpr:
    """Canonical field-of-study expression: Composite clauses, Or-wrapped for >=2 terms."""
    terms: list[str] = []
    for name in fields_of_study:
        norm = name.strip().lower()
        if norm and norm not in terms:
            terms.append(norm)
    if not terms:
        raise EmptyQueryError("at least one field-of-study name is required")
    clauses = [f"Composite(F.FN=='{t}')" for t in terms]
    rendered = clauses[0] if len(clauses) == 1 else "Or(" + ", ".join(clauses) + ")"
    return QueryExpr(tuple(terms), rendered)


@dataclass
class FetchPlan:
    page_size: int = 1000
    max_pages: int | None = None
    requests_per_minute: int = 60
    mode: str = "fixture"  # fixture | live

    def __post_init__(self) -> None:
        if self.page_size < 1:
            raise ValueError("page_size must be >= 1")
        if self.requests_per_minute < 1:
            raise ValueError("requests_per_minute must be >= 1")
        if self.mode not in ("fixture", "live"):
            raise ValueError(f"unknown mode {self.mode!r}")


class RateLimiter:
    """Keeps request starts within requests_per_minute over any sliding 60 s window."""

    def __init__(self, requests_per_minute: int,
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        self.rpm = requests_per_minute
        self.clock = clock
        self.sleep = sleep
        self._starts: deque[float] = deque()

    def acquire(self) -> float:
        now = self.clock()
        while self._starts and now - self._starts[0] >= 60.0:
            self._starts.popleft()
        if len(self._starts) >= self.rpm:
            wait = 60.0 - (now - self._starts[0])
            if wait > 0:
                self.sleep(wait)
            now = self.clock()
            while self._starts and now - self._starts[0] >= 60.0:
                self._starts.popleft()
        self._starts.append(now)
        return now


class FixtureTransport:
    """Serves recorded evaluate responses from a directory of page files."""

    def __init__(self, fixture_dir: str):
        self.dir = Path(fixture_dir)

    def request(self, expr: str, count: int, offset: int, attributes: str) -> dict:
        page_index = offset // count + 1
        path = self.dir / f"page-{page_index:04d}.json"
        if not path.exists():
            return {"entities": []}
        return json.loads(path.read_text("utf-8"))


class HttpTransport:
    """Minimal GET transport for a compatible evaluate endpoint."""

    def __init__(self, base_url: str, credential: str = "", timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self.credential = credential
        self.timeout = timeout

    def request(self, expr: str, count: int, offset: int, attributes: str) -> dict:
        params = urllib.parse.urlencode(
            {"expr": expr, "count": count, "offset": offset, "attributes": attributes})
        req = urllib.request.Request(f"{self.base_url}/evaluate?{params}")
        if self.credential:
            req.add_header("Ocp-Apim-Subscription-Key", self.credential)
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            if exc.code in (401, 403):
                raise AuthFailureError(f"endpoint rejected credential (HTTP {exc.code})") from exc
            if exc.code == 429:
                raise RateLimitedError("endpoint throttled the request (HTTP 429)") from exc
            raise TransientError(f"HTTP {exc.code}") from exc
        except urllib.error.URLError as exc:
            raise TransientError(str(exc)) from exc


@dataclass
class FetchResult:
    records: list[Record] = field(default_factory=list)
    contexts: list[CitationContext] = field(default_factory=list)
    pages_fetched: int = 0
    truncated: bool = False
    request_log: list[float] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


class MagClient:
    """Paging fetcher with rate limiting and bounded exponential backoff."""

    BACKOFF = (1.0, 2.0, 4.0)

    def __init__(self, transport, plan: FetchPlan,
                 clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep,
                 attributes: str = DEFAULT_ATTRIBUTES):
        self.transport = transport
        self.plan = plan
        self.sleep = sleep
        self.attributes = attributes
        self.limiter = RateLimiter(plan.requests_per_minute, clock, sleep)

    def fetch(self, query: QueryExpr) -> FetchResult:
        result = FetchResult()
        seen_ids: set[str] = set()
        page = 0
        while True:
            if self.plan.max_pages is not None and page >= self.plan.max_pages:
                result.truncated = True
                result.warnings.append(
                    f"stopped at max_pages={self.plan.max_pages}; results are partial")
                break
            offset = page * self.plan.page_size
            response = self._request_with_retry(query.rendered, offset, result)
            page += 1
            result.pages_fetched = page
            entities = response.get("entities", [])
            for entity in entities:
                self._emit(entity, result, seen_ids)
            if len(entities) < self.plan.page_size:
                break
        return result

    def _request_with_retry(self, expr: str, offset: int, result: FetchResult) -> dict:
        last_error: Exception | None = None
        for attempt in range(len(self.BACKOFF) + 1):
            if attempt > 0:
                self.sleep(self.BACKOFF[attempt - 1])
            started = self.limiter.acquire()
            result.request_log.append(started)
            try:
                return self.transport.request(expr, self.plan.page_size, offset, self.attributes)
            except AuthFailureError:
                raise
            except (RateLimitedError, TransientError) as exc:
                last_error = exc
        raise last_error  # retries exhausted

    def _emit(self, entity: dict, result: FetchResult, seen_ids: set[str]) -> None:
        rec_id = str(entity.get("Id", "")).strip()
        year = entity.get("Y")
        if not rec_id or not isinstance(year, int):
            result.warnings.append(f"skipped entity with missing Id/Y: {entity.get('Id')!r}")
            return
        if rec_id in seen_ids:
            result.warnings.append(f"skipped duplicate entity {rec_id}")
            return
        seen_ids.add(rec_id)
        month = None
        date = entity.get("D")
        if isinstance(date, str) and len(date) >= 7 and date[5:7].isdigit():
            m = int(date[5:7])
            if 1 <= m <= 12:
                month = m
        refs: list[str] = []
        seen_refs = set()
        for ref in entity.get("RId", []) or []:
            ref_id = str(ref)
            if ref_id not in seen_refs:
                seen_refs.add(ref_id)
                refs.append(ref_id)
        cc = entity.get("CC")
        result.records.append(Record(
            id=rec_id, year=year, month=month,
            title=str(entity.get("Ti", "") or ""),
            venue=entity.get("VFN") or None,
            doi=entity.get("DOI") or None,
            refs=refs,
            citation_count=cc if isinstance(cc, int) and cc >= 0 else None,
        ))
        citcon = entity.get("CitCon") or {}
        for cited_id in sorted(citcon):
            for ordinal, passage in enumerate(citcon[cited_id]):
                text = str(passage).strip()
                if text:
                    result.contexts.append(
                        CitationContext(rec_id, str(cited_id), text, ordinal))


def fetch_records(query: QueryExpr, plan: FetchPlan, *,
                  fixture_dir: str | None = None,
                  endpoint: str | None = None,
                  credential: str = "",
                  clock: Callable[[], float] = time.monotonic,
                  sleep: Callable[[float], None] = time.sleep) -> FetchResult:
    """Fetch records + contexts per the plan, offline (fixture) or live."""
    if plan.mode == "fixture":
        if not fixture_dir:
            raise ValueError("fixture mode needs a fixture directory")
        transport = FixtureTransport(fixture_dir)
    else:
        if not endpoint:
            raise ValueError("live mode needs an endpoint base URL")
        transport = HttpTransport(endpoint, credential)
    client = MagClient(transport, plan, clock=clock, sleep=sleep)
    return client.fetch(query)
