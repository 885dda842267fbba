import { configureApi } from "./api";
import { Dashboard } from "./app";
import "./style.css";

// single base-URL setting: VITE_API_BASE at build time, default local service
configureApi(import.meta.env.VITE_API_BASE ?? "http://localhost:8080");

const root = document.getElementById("app");
if (root) {
  void new Dashboard(root).start();
}
