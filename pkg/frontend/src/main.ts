/**
 * Wizard controller: owns state transitions, talks to the service through
 * ApiClient, persists drafts locally, and re-renders after every change.
 */

import { ApiClient, ApiError, Checklist, ArchetypeSummary } from './api.js';
import {
    IdGenerator,
    WizardState,
    advance,
    assessmentRequest,
    back,
    canAdvance,
    clearState,
    initialState,
    loadState,
    saveState,
    selectArchetype,
    setSoftLevel,
    toggleSkill,
    withSubmission,
} from './state.js';
import { renderApp } from './views.js';

export interface AppOptions {
    root: HTMLElement;
    api: ApiClient;
    storage: Storage;
    idgen?: IdGenerator;
}

function defaultIdGenerator(): string {
    const rng = globalThis.crypto;
    if (rng && 'randomUUID' in rng) return rng.randomUUID();
    return `id-${Date.now()}-${Math.floor(Math.random() * 1e9)}`;
}

export class WizardApp {
    state: WizardState;
    archetypes: ArchetypeSummary[] = [];
    checklist: Checklist | null = null;
    busy = false;
    error: string | null = null;
    retriable = false;
    fieldErrors: Record<string, string> = {};

    private readonly root: HTMLElement;
    private readonly api: ApiClient;
    private readonly storage: Storage;
    private readonly idgen: IdGenerator;

    constructor(options: AppOptions) {
        this.root = options.root;
        this.api = options.api;
        this.storage = options.storage;
        this.idgen = options.idgen ?? defaultIdGenerator;
        this.state = loadState(this.storage, this.idgen);
        this.root.addEventListener('click', (event) => this.onClick(event));
        this.root.addEventListener('change', (event) => this.onChange(event));
    }

    async start(): Promise<void> {
        try {
            this.archetypes = await this.api.listArchetypes();
            if (this.state.draft.archetypeId) {
                this.checklist = await this.api.getChecklist(this.state.draft.archetypeId);
            }
            this.error = null;
        } catch (err) {
            this.error = describeError(err);
            this.retriable = true;
        }
        this.render();
    }

    private setState(state: WizardState): void {
        this.state = state;
        saveState(this.storage, state);
        this.render();
    }

    render(): void {
        this.root.innerHTML = renderApp({
            state: this.state,
            archetypes: this.archetypes,
            checklist: this.checklist,
            busy: this.busy,
            error: this.error,
            retriable: this.retriable,
            fieldErrors: this.fieldErrors,
            canNext: canAdvance(this.state, this.checklist),
        });
    }

    private onClick(event: Event): void {
        const target = (event.target as HTMLElement).closest('[data-action]');
        if (!(target instanceof HTMLElement)) return;
        if (target instanceof HTMLButtonElement && target.disabled) return;
        switch (target.dataset.action) {
            case 'next':
                void this.next();
                break;
            case 'back':
                this.setState(back(this.state));
                break;
            case 'submit':
            case 'retry':
                void this.submit();
                break;
            case 'dismiss-token':
                this.setState({ ...this.state, tokenRevealed: true });
                break;
            case 'delete-data':
                void this.deleteData();
                break;
        }
    }

    private onChange(event: Event): void {
        const input = event.target;
        if (!(input instanceof HTMLInputElement)) return;
        switch (input.dataset.action) {
            case 'select-archetype':
                void this.chooseArchetype(input.value);
                break;
            case 'toggle-skill': {
                const category = input.dataset.category === 'digital' ? 'digital' : 'hard';
                this.setState(toggleSkill(this.state, category, input.value));
                break;
            }
            case 'set-soft-level': {
                const skill = input.dataset.skill ?? '';
                this.setState(setSoftLevel(this.state, skill, Number(input.value)));
                break;
            }
        }
    }

    private async chooseArchetype(archetypeId: string): Promise<void> {
        this.setState(selectArchetype(this.state, archetypeId));
        try {
            this.checklist = await this.api.getChecklist(archetypeId);
            this.error = null;
            this.retriable = false;
        } catch (err) {
            this.checklist = null;
            this.error = describeError(err);
            this.retriable = false;
        }
        this.render();
    }

    private async next(): Promise<void> {
        if (!canAdvance(this.state, this.checklist)) return;
        this.setState(advance(this.state));
    }

    private async submit(): Promise<void> {
        if (!canAdvance(this.state, this.checklist) && this.state.step === 'soft-skills') return;
        if (this.busy) return;
        this.busy = true;
        this.error = null;
        this.fieldErrors = {};
        this.render();
        // the owner token is minted client-side once and reused on retry
        const ownerToken = this.state.ownerToken ?? this.idgen();
        this.state = { ...this.state, ownerToken };
        saveState(this.storage, this.state);
        try {
            const result = await this.api.createAssessment(
                assessmentRequest(this.state),
                ownerToken,
            );
            this.busy = false;
            this.setState(withSubmission(this.state, result));
        } catch (err) {
            this.busy = false;
            if (err instanceof ApiError && err.status === 422) {
                this.fieldErrors = err.fieldErrors;
                this.error = 'The service rejected the assessment; check the highlighted fields.';
                this.retriable = false;
            } else {
                // network failure: keep the draft, offer retry with the same ids
                this.error = 'Could not reach the assessment service.';
                this.retriable = true;
            }
            this.render();
        }
    }

    private async deleteData(): Promise<void> {
        const { result } = this.state;
        try {
            if (result && this.state.ownerToken) {
                await this.api.deleteAssessment(result.assessment_id, this.state.ownerToken);
            }
        } catch (err) {
            this.error = describeError(err);
            this.render();
            return;
        }
        clearState(this.storage);
        this.checklist = null;
        this.error = null;
        this.retriable = false;
        this.fieldErrors = {};
        this.setState(initialState(this.idgen));
    }
}

function describeError(err: unknown): string {
    if (err instanceof ApiError) return err.message;
    return 'Could not reach the assessment service.';
}

export function boot(): void {
    const root = document.getElementById('app');
    if (!root) return;
    const base =
        (window as { SKILLGAP_API_BASE?: string }).SKILLGAP_API_BASE ??
        root.dataset.apiBase ??
        '';
    const app = new WizardApp({
        root,
        api: new ApiClient(base),
        storage: window.localStorage,
    });
    void app.start();
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
    boot();
}
