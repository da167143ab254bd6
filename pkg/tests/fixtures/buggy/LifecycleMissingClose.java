package app.svc;

import android.app.Service;
import android.database.sqlite.SQLiteDatabase;
import android.database.sqlite.SQLiteOpenHelper;

public class LifecycleMissingClose extends Service {
    private SQLiteOpenHelper helper;
    private SQLiteDatabase db;

    public void onCreate() {
        db = helper.getWritableDatabase();
        startTracking();
    }

    public void onDestroy() {
        stopTracking();
        helper = null;
    }

    private void startTracking() {
    }

    private void stopTracking() {
    }
}
