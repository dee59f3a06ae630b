/**
 * Typed client for the attrlens HTTP service.
 *
 * The UI never computes profiles, characteristics, or CVs itself; every
 * number it shows comes out of one of these calls.
 */

export interface TypeDoc {
  class: "quantitative" | "categorical";
  cf: number;
  threshold: number;
}

export interface CharacteristicDoc {
  characteristic: "static" | "semi-dynamic" | "dynamic";
  activityCount: number;
  activities: string[];
  avgPerTrace: string;
  traceSupport: number;
  totalOccurrences: number;
}

export interface CvDoc {
  perTrace: Record<string, number>;
  degVar: number;
  contributingTraces: number;
  skippedSingleValueTraces: number;
  normalization: { kind: string; offset?: number };
}

export interface AttributeProfileDoc {
  name: string;
  kind: string;
  type: TypeDoc;
  characteristic: CharacteristicDoc;
  cv: CvDoc | null;
}

export interface ProfileDoc {
  schema: "profile/1";
  threshold: number;
  attributes: Record<string, AttributeProfileDoc>;
}

export interface AttributeEntry {
  name: string;
  kind: string;
  type: "quantitative" | "categorical";
  characteristic: "static" | "semi-dynamic" | "dynamic";
  degVar: number | null;
}

export interface SelectionDoc {
  schema: "selection/1";
  query: Record<string, unknown>;
  quantitative: AttributeEntry[];
  categorical: AttributeEntry[];
  totals: { quantitative: number; categorical: number };
}

export interface AnnotationResult {
  kind: "number" | "category" | "shares" | "none";
  value?: number | string | boolean;
  values?: { value: string | number | boolean; share: number }[];
}

export interface AnnotationDoc {
  attribute: string;
  fn: string;
  valueCount: number;
  excludedMissing: number;
  result: AnnotationResult;
}

export interface DepActivityDoc {
  name: string;
  frequency: number;
  annotations: AnnotationDoc[];
}

export interface DepEdgeDoc {
  from: string;
  to: string;
  frequency: number;
}

export interface DepModelDoc {
  schema: "depmodel/1";
  activities: DepActivityDoc[];
  edges: DepEdgeDoc[];
  starts: Record<string, number>;
  ends: Record<string, number>;
}

export interface AttributeQuery {
  activity?: string;
  characteristic?: "static" | "semi-dynamic" | "dynamic";
  cvMin?: number;
  cvMax?: number;
  type?: "quantitative" | "categorical";
  th?: number;
}

export interface EnhanceRequest {
  attribute: string;
  fn: string;
  scope: string; // "all" | "activity:<name>"
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "http-error";
  let message = `${response.status} ${response.statusText}`;
  try {
    const body = (await response.json()) as { error?: string; message?: string };
    if (body.error) code = body.error;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async getJson<T>(path: string, params?: Record<string, string>): Promise<T> {
    const url = new URL(this.baseUrl + path);
    for (const [key, value] of Object.entries(params ?? {})) {
      url.searchParams.set(key, value);
    }
    const response = await this.fetchFn(url.toString());
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  async listLogs(): Promise<string[]> {
    const doc = await this.getJson<{ logs: string[] }>("/logs");
    return doc.logs;
  }

  async uploadLog(data: Blob | string): Promise<{ id: string; traces: number; events: number }> {
    const response = await this.fetchFn(`${this.baseUrl}/logs`, {
      method: "POST",
      body: data,
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as { id: string; traces: number; events: number };
  }

  async getProfile(logId: string, th?: number): Promise<ProfileDoc> {
    const params: Record<string, string> = {};
    if (th !== undefined) params.th = String(th);
    return this.getJson<ProfileDoc>(`/logs/${logId}/profile`, params);
  }

  async getAttributes(logId: string, query: AttributeQuery): Promise<SelectionDoc> {
    const params: Record<string, string> = {};
    if (query.activity !== undefined) params.activity = query.activity;
    if (query.characteristic !== undefined) params.characteristic = query.characteristic;
    if (query.cvMin !== undefined) params.cvMin = String(query.cvMin);
    if (query.cvMax !== undefined) params.cvMax = String(query.cvMax);
    if (query.type !== undefined) params.type = query.type;
    if (query.th !== undefined) params.th = String(query.th);
    return this.getJson<SelectionDoc>(`/logs/${logId}/attributes`, params);
  }

  async getModel(logId: string): Promise<DepModelDoc> {
    return this.getJson<DepModelDoc>(`/logs/${logId}/model`);
  }

  async enhance(logId: string, request: EnhanceRequest): Promise<DepModelDoc> {
    const response = await this.fetchFn(`${this.baseUrl}/logs/${logId}/enhance`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(request),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as DepModelDoc;
  }
}
