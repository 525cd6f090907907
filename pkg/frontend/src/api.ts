/**
 * Typed client for the assessment service REST contract. The UI never
 * computes a score itself; everything rendered comes out of these responses.
 */

export interface ArchetypeSummary {
    archetype_id: string;
    title: string;
    description: string;
    macro_class: string;
}

export interface ChecklistItem {
    skill_id: string;
    label: string;
    green: boolean;
    scale?: string[];
    target?: number | null;
}

export interface Checklist {
    hard: ChecklistItem[];
    digital: ChecklistItem[];
    soft: ChecklistItem[];
}

export interface MissingSkill {
    skill_id: string;
    label: string;
    green: boolean;
}

export interface SoftComparison {
    skill_id: string;
    current: number;
    target: number;
    verdict: 'improve' | 'maintain';
}

export interface NearestEntry {
    archetype_id: string;
    distance: number;
}

export interface GapReport {
    missing_binary: { hard: MissingSkill[]; digital: MissingSkill[] };
    soft_comparisons: SoftComparison[];
    coverage: number;
    nearest: NearestEntry[];
    distance_to_own: number;
    weights: { binary: number; soft: number };
}

export interface SubmissionResult {
    assessment_id: string;
    report: GapReport;
}

export interface AssessmentRequest {
    assessment_id: string;
    archetype_id: string;
    selected_binary: string[];
    soft_levels: Record<string, number>;
}

export class ApiError extends Error {
    constructor(
        public status: number,
        message: string,
        public fieldErrors: Record<string, string> = {},
    ) {
        super(message);
        this.name = 'ApiError';
    }
}

interface ValidationDetail {
    loc?: Array<string | number>;
    msg?: string;
}

function fieldErrorsFrom(body: unknown): Record<string, string> {
    const errors: Record<string, string> = {};
    const detail = (body as { detail?: unknown })?.detail;
    if (Array.isArray(detail)) {
        for (const entry of detail as ValidationDetail[]) {
            const loc = entry.loc ?? [];
            const field = loc.filter((p) => p !== 'body').map(String).join('.');
            if (field) errors[field] = entry.msg ?? 'invalid value';
        }
    }
    return errors;
}

export class ApiClient {
    constructor(
        private readonly baseUrl: string,
        private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
    ) {}

    private url(path: string): string {
        return this.baseUrl.replace(/\/$/, '') + path;
    }

    private async request<T>(path: string, init?: RequestInit): Promise<T> {
        const response = await this.fetchFn(this.url(path), init);
        if (!response.ok) {
            let body: unknown = null;
            try {
                body = await response.json();
            } catch {
                /* non-JSON error body */
            }
            const detail = (body as { detail?: unknown })?.detail;
            const message =
                typeof detail === 'string' ? detail : `request failed (${response.status})`;
            throw new ApiError(response.status, message, fieldErrorsFrom(body));
        }
        if (response.status === 204) return undefined as T;
        return (await response.json()) as T;
    }

    listArchetypes(): Promise<ArchetypeSummary[]> {
        return this.request('/api/archetypes');
    }

    getChecklist(archetypeId: string): Promise<Checklist> {
        return this.request(`/api/archetypes/${encodeURIComponent(archetypeId)}/checklist`);
    }

    createAssessment(body: AssessmentRequest, ownerToken: string): Promise<SubmissionResult> {
        return this.request('/api/assessments', {
            method: 'POST',
            headers: {
                'Content-Type': 'application/json',
                'X-Owner-Token': ownerToken,
            },
            body: JSON.stringify(body),
        });
    }

    deleteAssessment(assessmentId: string, ownerToken: string): Promise<unknown> {
        return this.request(`/api/assessments/${encodeURIComponent(assessmentId)}`, {
            method: 'DELETE',
            headers: { 'X-Owner-Token': ownerToken },
        });
    }
}
